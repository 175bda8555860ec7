from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from syndgap.ball import SyndromeBallQuery, enumerate_ball
from syndgap.codes import LinearCode, sample_code, syndrome_keys
from syndgap.errors import BudgetExceeded, DegenerateDirection
from syndgap.field import field_make
from syndgap.geometry import (
    AffineObject,
    affine_subspaces,
    canonical_line,
    classify_line,
    curve_ball_count,
    enumerate_syndrome_lines,
    line_ball_count,
    line_count_closed_form,
    linear_subspace_bases,
    push_forward,
    space_ball_count,
    syndrome_line,
)


def point_sets(F, lines):
    out = []
    for L in lines:
        pts = F.add(L.s0[None, :], F.mul(F.elements()[:, None], L.s1[None, :]))
        out.append(frozenset(syndrome_keys(F.q, pts).tolist()))
    return out


def test_line_enumeration_examples():
    F2, F3 = field_make(2), field_make(3)
    assert len(list(enumerate_syndrome_lines(2, F2))) == 6
    sets = point_sets(F3, enumerate_syndrome_lines(2, F3))
    assert len(sets) == 12 and all(len(s) == 3 for s in sets)
    pairs = {frozenset(p) for s in sets for p in combinations(sorted(s), 2)}
    assert len(pairs) == 36
    assert list(enumerate_syndrome_lines(2, F3, filter_points=np.zeros((1, 2), dtype=int))) == []


@pytest.mark.parametrize("q,r", [(2, 3), (3, 3), (4, 2), (4, 3), (5, 2), (7, 2)])
def test_line_count_and_uniqueness(q, r):
    F = field_make(q)
    lines = list(enumerate_syndrome_lines(r, F))
    assert len(lines) == line_count_closed_form(q, r)
    sets = point_sets(F, lines)
    assert len(set(sets)) == len(sets)
    keys = [L.key for L in lines]
    assert keys == sorted(keys)
    # every line is already canonical
    for L in lines[:200]:
        assert canonical_line(F, L.s0, L.s1).key == L.key


def test_filtered_lines_are_those_through_two_filter_points():
    F = field_make(3)
    rng = np.random.default_rng(0)
    pts = np.unique(F.random((7, 3), rng), axis=0)
    fkeys = set(syndrome_keys(3, pts).tolist())
    want = [s for s in point_sets(F, enumerate_syndrome_lines(3, F)) if len(s & fkeys) >= 2]
    got = point_sets(F, enumerate_syndrome_lines(3, F, filter_points=pts))
    assert sorted(map(sorted, got)) == sorted(map(sorted, want))


def test_line_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_syndrome_lines(6, field_make(7), budget=1000))


def test_line_ball_count_examples():
    F = field_make(3)
    bc = line_ball_count(F, [1, 0, 0], [0, 1, 0], 1, 1)
    assert (bc.count, bc.contained, bc.bound) == (1, False, 2)
    bc = line_ball_count(F, [1, 2, 0], [0, 1, 1], 3, 3)
    assert bc.contained and bc.holds
    for E in range(4):
        assert line_ball_count(F, [1, 1, 0], [0, 1, 2], E, E).bound == E + 1
    with pytest.raises(DegenerateDirection):
        line_ball_count(F, [1, 0, 0], [0, 0, 0], 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 5, 7]), st.integers(2, 3), st.integers(2, 7), st.integers(0, 10**6))
def test_space_count_by_direct_evaluation(q, m, n, seed):
    F = field_make(q)
    if q**m > 400:
        m = 1
    rng = np.random.default_rng(seed)
    coeffs = F.random((m + 1, n), rng)
    coeffs[:, rng.random(n) < 0.5] = 0
    pts = list(product(range(q), repeat=m))
    E = int(rng.integers(0, n + 1))
    Ep = int(rng.integers(E, n + 1))
    weights = []
    for b in pts:
        v = coeffs[0].copy()
        for i, bi in enumerate(b):
            v = F.add(v, F.mul(bi, coeffs[i + 1]))
        weights.append(np.count_nonzero(v))
    bc = space_ball_count(F, coeffs, E, Ep)
    assert bc.count == sum(w <= E for w in weights)
    assert bc.contained == all(w <= Ep for w in weights)
    assert bc.support == int(np.count_nonzero(np.any(coeffs != 0, axis=0)))
    assert bc.holds


def test_space_examples():
    F = field_make(3)
    bc = space_ball_count(F, np.zeros((3, 4), dtype=int), 1, 2)
    assert bc.count == 9 and bc.support == 0 and not bc.applies
    # m = 1 agrees with the line count
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = F.random(5, rng), F.random(5, rng)
        if not b.any():
            continue
        for E, Ep in [(1, 1), (1, 3), (2, 4)]:
            lc = line_ball_count(F, a, b, E, Ep)
            sc = space_ball_count(F, np.vstack([a, b]), E, Ep)
            assert (lc.count, lc.contained) == (sc.count, sc.contained)


def test_space_floor_exceeded_but_unfloored_bound_holds():
    F = field_make(3)
    rows = np.array([[0, 0, 0, 1, 1], [0, 0, 1, 1, 2], [1, 1, 0, 1, 1]])
    bc = space_ball_count(F, rows, 2, 4)
    assert bc.applies and bc.count == 4
    assert bc.floored_bound == 3 and bc.exceeds_floored
    assert bc.bound == Fraction(5, 3) * 3 and bc.holds


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(2, 6), st.integers(0, 10**6))
def test_curve_count_by_direct_evaluation(ell, n, seed):
    F = field_make(5)
    rng = np.random.default_rng(seed)
    coeffs = F.random((ell + 1, n), rng)
    coeffs[:, rng.random(n) < 0.4] = 0
    E = int(rng.integers(0, n + 1))
    Ep = int(rng.integers(E, n + 1))
    weights = []
    for a in range(5):
        v = np.zeros(n, dtype=np.int64)
        for i in range(ell + 1):
            v = F.add(v, F.mul(F.power(a, i), coeffs[i]))
        weights.append(np.count_nonzero(v))
    bc = curve_ball_count(F, coeffs, E, Ep)
    assert bc.count == sum(w <= E for w in weights)
    assert bc.contained == all(w <= Ep for w in weights)
    assert bc.holds
    if ell == 1:
        lc = line_ball_count(F, coeffs[0], coeffs[1], E, Ep) if coeffs[1].any() else None
        if lc is not None:
            assert lc.count == bc.count


def test_curve_zero_coefficients():
    bc = curve_ball_count(field_make(5), np.zeros((3, 4), dtype=int), 0, 0)
    assert bc.count == 5 and bc.support == 0 and not bc.applies


def test_push_forward_pointwise():
    F = field_make(4)
    rng = np.random.default_rng(5)
    C = sample_code(6, 3, F, 5)
    ball = enumerate_ball(SyndromeBallQuery(C, 2))
    for kind, deg in [("line", 1), ("space", 2), ("curve", 2)]:
        obj = AffineObject(F, kind, F.random((deg + 1, 6), rng))
        img = push_forward(C, obj)
        words = obj.evaluate()
        assert np.array_equal(C.syndromes(words), img.evaluate())
        close = [
            any(np.count_nonzero(F.sub(w, c)) <= 2 for block in C.codewords() for c in block) for w in words
        ]
        assert list(ball.contains(img.evaluate())) == close
    code_obj = AffineObject(F, "line", C.kernel_basis[:2])
    assert not np.any(push_forward(C, code_obj).coeffs)
    I = LinearCode(F, np.eye(6, dtype=int))
    obj = AffineObject(F, "curve", F.random((3, 6), rng))
    assert np.array_equal(push_forward(I, obj).coeffs, obj.coeffs)


def test_classify_line_examples():
    F = field_make(3)
    C = sample_code(6, 3, F, 7)
    ball = enumerate_ball(SyndromeBallQuery(C, 1))
    outside = next(v for v in product(range(3), repeat=3) if not ball.contains(np.array(v)))
    cl = classify_line(F, syndrome_line(F, outside, [0, 0, 0]), ball)
    assert cl.degenerate and cl.count == 0
    for s1 in product(range(3), repeat=3):
        if any(s1):
            cl = classify_line(F, syndrome_line(F, [0, 0, 0], s1), ball)
            assert cl.degenerate and cl.count in (1, 3)
    for L in enumerate_syndrome_lines(3, F):
        cl = classify_line(F, L, ball)
        pts = F.add(L.s0[None, :], F.mul(F.elements()[:, None], L.s1[None, :]))
        assert cl.count == len({tuple(p) for p in pts if ball.contains(p)})
        assert cl.consistent


def gaussian_binomial(r, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (r - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("q,r,dim", [(2, 3, 2), (3, 3, 2), (4, 3, 1), (2, 4, 2), (3, 2, 0)])
def test_affine_subspace_counts(q, r, dim):
    F = field_make(q)
    assert sum(1 for _ in linear_subspace_bases(F, r, dim)) == gaussian_binomial(r, dim, q)
    spaces = list(affine_subspaces(F, r, dim))
    assert len(spaces) == gaussian_binomial(r, dim, q) * q ** (r - dim)
