from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from syndgap import linalg
from syndgap.adversarial import build_no_slack_pair, find_code_with_distance
from syndgap.agreement import (
    ca_decide,
    gap_check_line,
    gap_check_space,
    lifting_test,
    max_list_size,
    min_union_support,
    reformulation_crosscheck,
)
from syndgap.ball import build_ball_sets
from syndgap.codes import LinearCode, sample_code, syndrome_keys
from syndgap.field import field_make
from syndgap.geometry import AffineObject, canonical_line, syndrome_line
from syndgap.hamming import words_up_to


def codewords(C):
    return np.vstack(list(C.codewords()))


def brute_ca(C, U, Eplus):
    """Correlated agreement by direct search over codeword tuples."""
    F = C.F
    words = codewords(C)
    best = C.n + 1
    for tup in product(range(len(words)), repeat=len(U)):
        diff = np.zeros(C.n, dtype=bool)
        for u, t in zip(U, tup):
            diff |= F.sub(u, words[t]) != 0
        best = min(best, int(diff.sum()))
    return best <= Eplus


def test_ca_zero_targets():
    C = sample_code(6, 3, field_make(3), 0)
    res = ca_decide(C, np.zeros((3, 3), dtype=int), 0)
    assert res.decision and res.support == () and not np.any(res.X)


def test_ca_full_radius_is_column_span():
    F = field_make(3)
    H = np.array([[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]])
    C = LinearCode(F, H)
    assert ca_decide(C, [[1, 2, 0], [2, 2, 0]], 4).decision
    assert not ca_decide(C, [[1, 2, 1], [0, 0, 0]], 4).decision


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10**6))
def test_ca_matches_codeword_pairs_binary(n, seed):
    F = field_make(2)
    rng = np.random.default_rng(seed)
    C = sample_code(n, int(rng.integers(2, n)), F, seed)
    if C.k > 4:
        return
    U = F.random((2, n), rng)
    S = C.syndromes(U)
    for Ep in range(n + 1):
        res = ca_decide(C, S, Ep)
        assert res.decision == brute_ca(C, U, Ep)
        assert res.verify(C, S, Ep)


def test_reformulation_examples():
    F = field_make(2)
    C = sample_code(6, 3, F, 11)
    U = codewords(C)[:2]
    agree, left, right = reformulation_crosscheck(C, U, 0)
    assert agree and left and right
    # exhaustive over all 2-row coefficient stacks
    for flat in product(range(2), repeat=12):
        U = np.array(flat).reshape(2, 6)
        for Ep in (1, 2):
            assert reformulation_crosscheck(C, U, Ep)[0]


def test_reformulation_curve_ternary():
    F = field_make(3)
    rng = np.random.default_rng(4)
    for i in range(60):
        C = sample_code(5, 3, F, i)
        U = F.random((3, 5), rng)
        U[:, rng.random(5) < 0.4] = 0
        Ep = int(rng.integers(0, 6))
        agree, left, _ = reformulation_crosscheck(C, AffineObject(F, "curve", U), Ep)
        assert agree
        assert left == brute_ca(C, U, Ep)


def test_min_union_support_single_word_is_distance():
    from syndgap.codes import distance_to_code

    F = field_make(3)
    C = sample_code(6, 3, F, 2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        y = F.random(6, rng)
        assert min_union_support(C, y) == distance_to_code(C, y)[0]


def test_gap_check_line_contained():
    F = field_make(5)
    C = sample_code(8, 6, F, 3)
    balls = build_ball_sets(C, [2])
    x1 = np.array([1, 0, 0, 0, 0, 0, 0, 0])
    x2 = np.array([0, 0, 3, 0, 0, 0, 0, 0])
    L = canonical_line(F, C.syndrome(x1), C.syndrome(x2))
    rep = gap_check_line(C, L, 2, 2, balls, K=1)
    assert rep.contained and rep.count == rep.total == 5 and not rep.violation


def test_gap_check_line_degenerate_and_no_slack():
    F = field_make(5)
    E = 1
    C = find_code_with_distance(8, 6, F, 2 * E + 2, 200, seed=0)
    balls = build_ball_sets(C, [E])
    L = syndrome_line(F, np.zeros(6, dtype=int), C.syndrome([1, 0, 0, 0, 0, 0, 0, 0]))
    rep = gap_check_line(C, L, E, E, balls)
    assert rep.count in (1, 5)
    inst = build_no_slack_pair(F, 8, E, 2, (0, 3))
    L = canonical_line(F, C.syndrome(inst.x1), C.syndrome(inst.x2))
    rep = gap_check_line(C, L, E, E, balls, K=1)
    assert rep.count >= 2 and not rep.contained and rep.violation


def test_gap_check_space_examples():
    F = field_make(3)
    C = sample_code(6, 3, F, 5)
    balls = build_ball_sets(C, [1, 6])
    rep = gap_check_space(C, AffineObject(F, "space", np.zeros((3, 3), dtype=int)), 1, 1, balls)
    assert rep.ratio == 1 and rep.contained and rep.total == 1
    full = AffineObject(F, "space", np.vstack([np.zeros(3, dtype=int), np.eye(3, dtype=int)]))
    rep = gap_check_space(C, full, 1, 6, balls)
    assert rep.contained and rep.total == 27
    rng = np.random.default_rng(1)
    for _ in range(30):
        S = AffineObject(F, "space", F.random((3, 3), rng))
        rep = gap_check_space(C, S, 1, 1, balls)
        pts = {tuple(p) for p in S.evaluate()}
        assert rep.total == len(pts)
        assert rep.count == sum(balls[1].contains(np.array(p)) for p in pts)
        assert rep.eval_total == 9


def test_max_list_size_brute_force():
    F = field_make(3)
    for s in range(5):
        C = sample_code(5, 3, F, s)
        words = codewords(C)
        for E in range(3):
            best = 0
            for y in product(range(3), repeat=5):
                best = max(best, int(np.sum(np.count_nonzero(F.sub(np.array(y)[None], words), axis=1) <= E)))
            assert max_list_size(C, E) == best


def test_lifting_single_code():
    F = field_make(4)
    C = sample_code(8, 4, F, 1)
    rep = lifting_test(C, 1, 2, "gap")
    assert rep.antecedent_holds and rep.passed and rep.spaces_checked > 0
    assert rep.lifted_tau == rep.tau * 4 / 3
    rep = lifting_test(C, 1, 2, "gap", tau=Fraction(1))
    assert rep.passed
    low = lifting_test(C, 1, 1, "gap", tau=Fraction(0))
    if not low.antecedent_holds:
        assert low.note and low.spaces_checked == 0
