import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from syndgap import planner
from syndgap.codes import INF
from syndgap.errors import AdmissibilityViolation, DomainError, HypothesisViolation
from syndgap.hamming import ball_volume


def float_entropy(rho, q):
    return rho * math.log(q - 1, q) - rho * math.log(rho, q) - (1 - rho) * math.log(1 - rho, q)


def test_entropy_maximum():
    for q in (2, 3, 4, 7, 16, 256):
        assert abs(planner.entropy_q(1 - Fraction(1, q), q) - 1) < 1e-40
    assert abs(planner.binary_entropy(Fraction(1, 2)) - 1) < 1e-40


def test_entropy_domain():
    with pytest.raises(DomainError):
        planner.entropy_q(0, 3)
    with pytest.raises(DomainError):
        planner.entropy_q(Fraction(3, 4), 3)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 8, 11, 16]), st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(1, 2)))
def test_entropy_against_float_formula(q, rho):
    assert abs(float(planner.entropy_q(rho, q)) - float_entropy(float(rho), q)) < 1e-12


def test_entropy_bound_grid():
    rows = planner.entropy_grid()
    assert len({(q, rho) for q, rho, _, _ in rows}) == 100
    for q, rho, eps, out in rows:
        assert out["holds"]
        assert out.get("eps_holds", True)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(999, 1000)))
def test_a_eps_exceeds_b_eps(eps):
    a, b = planner.a_eps(eps), planner.b_eps(eps)
    assert a > b > 0
    want = float(eps) / math.log2(1 / float(eps))
    assert abs(float(a) - want) <= 1e-9 * want  # relative: a_eps grows without bound as eps -> 1


def test_bexp_gamma():
    for E in range(1, 6):
        assert planner.bexp_gamma(E, E, 20)[0] == E + 1
    assert planner.bexp_gamma(2, 4, 9)[0] == 1
    assert planner.bexp_gamma(4, 5, 10)[1] == Fraction(3, 5)
    assert planner.bexp_gamma(1, 1, INF)[1] == 1
    with pytest.raises(DomainError):
        planner.bexp_gamma(2, 4, 4)


def test_worked_line_plan():
    p = planner.plan("line", "two-radius", "1/2", "1/10", "1/10")
    v = p.values
    assert v["ell"] == 9
    assert abs(v["a_eps"] - 0.030103) < 1e-6
    assert abs(v["delta"] - 0.469897) < 1e-6
    delta = 0.5 - 0.1 / math.log2(10)
    assert v["K"] == math.ceil(2 * (delta / (delta - 0.1)) ** 9)
    assert v["q_min_int"] == max(math.ceil(20**10), v["K"] + 1)
    assert p.stable and p.audit_negative and not p.flagged


def test_space_plan_at_m1_is_two_below_line():
    for R in planner.GRID_R:
        for eps in planner.GRID_EPS:
            rho = planner.rho_sweep(R, eps, "two-radius", 3)[0]
            line = planner.plan("line", "two-radius", R, eps, rho)
            space = planner.plan("space", "two-radius", R, eps, rho, degree=1)
            assert space.values["lam"] == line.values["ell"] - 2


def test_admissibility():
    with pytest.raises(AdmissibilityViolation):
        planner.plan("line", "one-radius", "1/2", "1/10", Fraction(2, 5), n=100)
    with pytest.raises(AdmissibilityViolation):
        planner.plan("line", "two-radius", "1/2", "3/10", "1/100")
    with pytest.raises(AdmissibilityViolation):
        planner.plan("line", "one-radius", "1/2", "1/10", "1/10")  # needs n


def test_one_radius_exact():
    R, eps, rho, n = Fraction(1, 2), Fraction(1, 10), Fraction(1, 5), 1000
    p = planner.plan("line", "one-radius", R, eps, rho, n=n)
    E = 200
    d_n = 400
    ell = 9
    K = (E + 1) * d_n**ell // (d_n - E) ** ell
    assert (p.values["E"], p.values["d_n"], p.values["ell"], p.values["K"]) == (E, d_n, ell, K)
    assert p.values["q_min_int"] == K + 2
    c = planner.plan("curve", "one-radius", R, eps, rho, n=n, degree=2)
    lam = math.ceil(3 * Fraction(1, 2) / eps) - 3
    assert c.values["lam"] == lam
    assert c.values["K"] == 2 * (E + 1) * d_n**lam // (d_n - E) ** lam


def test_precision_stability_large_tau():
    p = planner.plan("space", "two-radius", "1/4", "1/20", planner.rho_sweep(Fraction(1, 4), Fraction(1, 20), "two-radius", 20)[-1], degree=3)
    assert p.stable
    assert p.values["tau"] > 10**40


def test_audit_grid_negative_and_stable():
    rows = planner.audit_grid(points=5)
    assert rows
    assert all(r[6] and r[7] for r in rows)


def test_k_over_n_settles():
    conv = planner.k_over_n()
    a, b = conv[-2][1], conv[-1][1]
    assert abs(a - b) / b < Fraction(1, 100)


def line_bound_float(n, q, r, E, K, s):
    vol = ball_volume(n, q, E)
    lg = lambda x: math.log(x, q)
    return 2 * r + lg(math.comb(q, K)) + lg(math.comb(K, s + 3)) + (s + 3) * (lg(vol) - r)


def test_union_bound_line():
    n, q, r, E, Ep, d = 8, 8, 4, 1, 2, 4
    B, gamma = planner.bexp_gamma(E, Ep, d)
    # s = 0 is the smallest iteration count; K = 3 is the smallest K with K > B and C(K, s+3) > 0
    s, K = 0, 3
    assert K > B / gamma**s
    val = planner.union_bound("line", n, q, r, E, Ep, K, s, d)
    assert mpmath.isfinite(val)
    assert abs(float(val) - line_bound_float(n, q, r, E, K, s)) < 1e-9
    vals = [planner.union_bound("line", n, q, rr, E, Ep, K, s, d) for rr in range(3, 8)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_union_bound_hypotheses():
    with pytest.raises(HypothesisViolation):
        planner.union_bound("line", 8, 8, 4, 1, 2, 1, 0, 4)
    with pytest.raises(HypothesisViolation):
        planner.union_bound("space", 8, 8, 4, 1, 1, 10, 0, 4, degree=2)  # needs K > 2 * 8
    with pytest.raises(DomainError):
        planner.union_bound("line", 8, 8, 4, 3, 3, 5, 0, 3)
    assert mpmath.isfinite(planner.union_bound("curve", 8, 8, 4, 1, 1, 5, 0, 4, degree=2))


def test_plan_json_and_text():
    p = planner.plan("curve", "two-radius", "1/2", "1/10", "1/10", degree=2)
    d = p.to_json()
    assert d["values"]["lam"] == p.values["lam"]
    assert "tau" in p.to_text()
