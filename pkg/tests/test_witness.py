from fractions import Fraction
from math import ceil

import numpy as np
import pytest

from syndgap import linalg
from syndgap.adversarial import build_no_slack_pair, find_code_with_distance, floor_counterexample
from syndgap.ball import SyndromeBallQuery, build_ball_sets, enumerate_ball
from syndgap.codes import INF, LinearCode, sample_code
from syndgap.errors import (
    DesignDegenerate,
    InfeasibleBudget,
    MissingDistance,
    NotAWitness,
    RankTooLow,
)
from syndgap.field import field_make
from syndgap.geometry import AffineObject, line_ball_count
from syndgap.rng import make_rng
from syndgap.witness import (
    EvaluationDesign,
    WitnessMatrix,
    degeneracy_threshold,
    reduce_rank_once,
    reduce_to_base,
    synth_witness,
    threshold_check,
    verify_witness,
    witness_from_ball,
)


def weight6_line_witness():
    """Rank-3 line witness over GF(5), n=10, E=2, hiding the weight-6 codeword c = 1^6 0^4.

    Columns are x_j = a + alpha_j b + alpha_j^2 c at alpha = 0, 1, 2.  On each
    coordinate of supp(c) the row is a monic quadratic vanishing at two of
    the three points, so every column has weight exactly 2.
    """
    F = field_make(5)
    n = 10
    pairs = [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)
    c = np.zeros(n, dtype=np.int64)
    for i, (p, q) in enumerate(pairs):
        a[i] = (p * q) % 5
        b[i] = (-(p + q)) % 5
        c[i] = 1
    alphas = np.array([0, 1, 2])
    X = np.stack([F.add(F.add(a, F.mul(t, b)), F.mul(t * t % 5, c)) for t in alphas], axis=1)
    rng = np.random.default_rng(1)
    while True:
        H = F.random((6, n), rng)
        H[:, 5] = F.neg(F.sum(H[:, :5], axis=1))  # H c = 0
        C = LinearCode(F, H)
        if linalg.rank(F, C.syndromes(np.vstack([a, b]))) == 2:
            break
    target = AffineObject(F, "line", C.syndromes(np.vstack([a, b])))
    return C, WitnessMatrix(target, EvaluationDesign("line", alphas, 1), X, 2), c


def test_hand_built_weight6_witness():
    C, W, c = weight6_line_witness()
    F = C.F
    assert verify_witness(C, W) == (True, None)
    assert np.count_nonzero(W.X, axis=0).tolist() == [2, 2, 2]
    assert linalg.rank(F, W.X) == 3
    assert C.is_codeword(c)
    W2, cert = reduce_rank_once(C, W)
    assert cert.rank_before == 3 and cert.rank_after == 2
    assert cert.support_size == 6
    assert cert.retained_fraction == Fraction(4, 6)
    assert len(cert.retained) >= ceil(W.K * Fraction(4, 6))
    assert C.is_codeword(cert.codeword) and np.count_nonzero(cert.codeword) == 6
    assert verify_witness(C, W2)[0]
    base = reduce_to_base(C, W)
    assert np.array_equal(C.syndromes(base.coefficients), W.target.coeffs)


def test_verify_witness_examples():
    F = field_make(3)
    C = sample_code(5, 3, F, 0)
    target = AffineObject(F, "line", np.zeros((2, 3), dtype=int))
    W = WitnessMatrix(target, EvaluationDesign("line", [0, 1, 2], 1), np.zeros((5, 3), dtype=int), 0)
    assert verify_witness(C, W) == (True, None)
    I = LinearCode(F, np.eye(5, dtype=int))
    x = np.array([1, 1, 0, 0, 0])
    t = AffineObject(F, "line", np.vstack([x, np.zeros(5, dtype=int)]))
    W = WitnessMatrix(t, EvaluationDesign("line", [0], 1), x[:, None], 1)
    assert verify_witness(I, W) == (False, (0, "weight"))


@pytest.mark.parametrize("kind,deg,q", [("line", 1, 7), ("space", 2, 5), ("curve", 2, 7)])
def test_synth_witness_and_reduction(kind, deg, q):
    F = field_make(q)
    C = sample_code(12, 6, F, 3)
    d = C.min_distance()
    K = 2 * q + 4 if kind == "space" else q
    h = deg + 1
    for extra in (0, 1, 2):
        W = synth_witness(kind, C, h + extra, K, 6, seed=extra, degree=deg)
        assert verify_witness(C, W)[0]
        assert linalg.rank(F, W.X) == h + extra
        base = reduce_to_base(C, W, d)
        assert len(base.chain) == extra
        assert np.array_equal(C.syndromes(base.coefficients), W.target.coeffs)
        U = W.design.subset(base.retained).rows(F)
        assert np.array_equal(F.matmul(base.coefficients.T, U), W.X[:, list(base.retained)])
        size = K
        for cert in base.chain:
            assert len(cert.retained) >= ceil(size * cert.retained_fraction)
            assert cert.retained_fraction >= cert.distance_fraction
            assert cert.rank_after < cert.rank_before
            size = len(cert.retained)
        if extra == 0:
            # already on the parametrization
            assert base.retained == tuple(range(K))


def test_synth_witness_infeasible():
    F = field_make(5)
    C = sample_code(6, 4, F, 0)
    with pytest.raises(InfeasibleBudget):
        synth_witness("line", C, 2 + C.k + 1, 5, 2, seed=0)


def test_already_lower_marker():
    F = field_make(5)
    C = sample_code(10, 6, F, 2)
    W = synth_witness("line", C, 2, 5, 4, seed=1)
    with pytest.raises(RankTooLow):
        reduce_rank_once(C, W)
    ext = [np.array([1, 0, 0, 0, 0])]
    W2, cert = reduce_rank_once(C, W, extension=ext)
    assert cert.already_lower and W2 is W
    assert cert.retained == tuple(range(5))


def test_space_design_in_hyperplane():
    F = field_make(3)
    C = sample_code(8, 4, F, 1)
    W = synth_witness("space", C, 4, 9, 6, seed=0, degree=2)
    pts = np.array([[0, 0], [0, 1], [0, 2]])  # all on the line b_1 = 0
    bad = WitnessMatrix(W.target, EvaluationDesign("space", pts, 2), W.X[:, :3], W.E)
    with pytest.raises(DesignDegenerate):
        reduce_rank_once(C, bad)


def test_not_a_witness():
    C, W, _ = weight6_line_witness()
    X = W.X.copy()
    X[9, 0] = 1
    with pytest.raises(NotAWitness):
        reduce_rank_once(C, WitnessMatrix(W.target, W.design, X, W.E))


def test_degeneracy_thresholds():
    assert degeneracy_threshold("line", 1, 7) == 1
    assert degeneracy_threshold("space", 2, 7) == 7
    assert degeneracy_threshold("curve", 3, 7) == 3


def test_threshold_check_needs_distance():
    C, W, _ = weight6_line_witness()
    with pytest.raises(MissingDistance):
        threshold_check(C, W, 2, True)
    assert not threshold_check(C, W, 2, False, d=6).applicable
    assert not threshold_check(C, W, 6, True, d=6).applicable  # E+ < d fails


def test_threshold_equality_on_no_slack_line():
    """With E+ = E and d >= 2E+2 the no-slack line reaches K = E + 1."""
    F = field_make(5)
    E = 1
    C = find_code_with_distance(8, 6, F, 2 * E + 2, 200, seed=0)
    d = C.min_distance()
    inst = build_no_slack_pair(F, 8, E, E + 1, (0, 1))
    target = AffineObject(F, "line", C.syndromes(np.vstack([inst.x1, inst.x2])))
    ball = enumerate_ball(SyndromeBallQuery(C, E))
    pts = target.evaluate()
    inside = np.flatnonzero(ball.contains(pts))
    W = witness_from_ball(C, target, inside, ball, E)
    v = threshold_check(C, W, E, flag=True, d=d)
    assert v.applicable and v.holds and v.t == v.h == 2
    assert v.K == E + 1 == v.rhs


def test_threshold_soak_on_lines():
    """Random lines through two members of H_E that leave H_{E+}: the inequality always holds."""
    F = field_make(5)
    # points on a line through two weight-E preimages have weight <= 2E, so E+ < 2E is needed to leave H_{E+}
    E, Ep = 2, 3
    C = find_code_with_distance(8, 6, F, Ep + 1, 200, seed=4)
    d = C.min_distance()
    balls = build_ball_sets(C, [E, Ep])
    members = balls[E].members()
    rng = make_rng(9)
    checked = 0
    for _ in range(1000):
        i, j = rng.choice(len(members), 2, replace=False)
        target = AffineObject(F, "line", np.vstack([members[i], F.sub(members[j], members[i])]))
        pts = target.evaluate()
        if balls[Ep].contains(pts).all() or target.h != 2:
            continue
        W = witness_from_ball(C, target, np.flatnonzero(balls[E].contains(pts)), balls[E], E)
        v = threshold_check(C, W, Ep, True, d=d)
        assert v.applicable and v.holds, v
        checked += 1
    assert checked > 100


def test_threshold_matches_line_ball_count_when_t_equals_h():
    F = field_make(7)
    I = LinearCode(F, np.eye(6, dtype=int))
    rng = np.random.default_rng(2)
    for _ in range(200):
        a, b = F.random((2, 6), rng)
        a[rng.random(6) < 0.5] = 0
        b[rng.random(6) < 0.5] = 0
        if linalg.rank(F, np.vstack([a, b])) < 2:
            continue
        E, Ep = 2, 3
        bc = line_ball_count(F, a, b, E, Ep)
        if bc.contained:
            continue
        target = AffineObject(F, "line", np.vstack([a, b]))
        pts = target.evaluate()
        keep = np.flatnonzero(np.count_nonzero(pts, axis=1) <= E)
        if len(keep) == 0:
            continue
        W = WitnessMatrix(target, EvaluationDesign("line", keep, 1), pts[keep].T, E)
        v = threshold_check(I, W, Ep, True, d=INF)
        assert v.K == bc.count and v.holds and v.t <= 2


@pytest.mark.parametrize("kind", ["space", "curve"])
@pytest.mark.parametrize("code", ["zero", "sampled"])
def test_floored_threshold_counterexamples(kind, code):
    C, W, v, ca = floor_counterexample(kind, code)
    assert verify_witness(C, W)[0]
    assert not ca
    assert v.applicable and v.t == v.h
    assert not v.holds and v.K > v.rhs
    assert v.holds_unfloored
