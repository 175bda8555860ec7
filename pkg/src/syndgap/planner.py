"""Explicit parameter recipes, entropy bounds and union-bound exponents.

Real-valued quantities are evaluated with mpmath at 50 and again at 100
digits past the integer part of the largest output; integer outputs (ceil/floor) must agree between the two runs, and a
value within 1e-20 of an integer boundary is flagged.  Quantities that are
rational are computed exactly with Fraction.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

import mpmath

from .codes import INF
from .errors import AdmissibilityViolation, DomainError, HypothesisViolation
from .hamming import ball_volume

DPS = 50
CHECK_DPS = 100
BOUNDARY_EPS = mpmath.mpf("1e-20")


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _mp(x):
    x = as_fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def frac_ceil(x):
    return -((-x.numerator) // x.denominator)


def frac_floor(x):
    return x.numerator // x.denominator


# entropy


def entropy_q(rho, q, dps=DPS):
    """H_q(rho) = rho log_q(q-1) - rho log_q rho - (1-rho) log_q(1-rho), for 0 < rho <= 1 - 1/q."""
    rho = as_fraction(rho)
    if q < 2 or not 0 < rho <= 1 - Fraction(1, q):
        raise DomainError(f"rho={rho} outside (0, 1-1/q] for q={q}")
    with mpmath.workdps(dps):
        r = _mp(rho)
        lq = mpmath.log(q)
        val = r * mpmath.log(q - 1) / lq - r * mpmath.log(r) / lq
        if rho < 1:
            val -= (1 - r) * mpmath.log(1 - r) / lq
        return +val


def binary_entropy(rho, dps=DPS):
    rho = as_fraction(rho)
    if not 0 < rho < 1:
        raise DomainError("binary entropy needs 0 < rho < 1")
    with mpmath.workdps(dps):
        r = _mp(rho)
        return -r * mpmath.log(r, 2) - (1 - r) * mpmath.log(1 - r, 2)


def a_eps(eps, dps=DPS):
    with mpmath.workdps(dps):
        e = _mp(eps)
        return e / mpmath.log(1 / e, 2)


def b_eps(eps, dps=DPS):
    with mpmath.workdps(dps):
        e = _mp(eps)
        return e / (1 + mpmath.log(1 / e, 2))


def entropy_bound_check(rho, q, eps=None, dps=DPS):
    """The entropy bounds at one point: returns dict of the compared values and pass flags."""
    with mpmath.workdps(dps):
        h = entropy_q(rho, q, dps)
        h2 = binary_entropy(rho, dps)
        r = _mp(rho)
        l2q = mpmath.log(q, 2)
        bound = r + h2 / l2q
        identity = r + (h2 + r * mpmath.log(1 - mpmath.mpf(1) / q, 2)) / l2q
        out = {
            "H_q": h,
            "bound": bound,
            "holds": h <= bound,
            "identity_gap": abs(h - identity),
        }
        if eps is not None and q >= (2 / _mp(eps)) ** (1 / _mp(eps)):
            b = b_eps(eps, dps)
            out["eps_bound"] = r + b * h2
            out["eps_holds"] = h <= r + b * h2 <= r + b
        return out


def volume_vs_entropy(n, q, E, dps=DPS):
    """Exact log_q |B_E| / n next to the entropy estimate H_q(E/n); no o(n) claim is made."""
    vol = ball_volume(n, q, E)
    with mpmath.workdps(dps):
        exact = mpmath.log(vol) / mpmath.log(q) / n
        rho = Fraction(E, n)
        est = entropy_q(rho, q, dps) if 0 < rho <= 1 - Fraction(1, q) else None
        return {"volume": vol, "log_q_volume_per_n": exact, "entropy_estimate": est}


def bexp_gamma(E, Eplus, d):
    """B = floor((E+ + 1)/(E+ - E + 1)) and gamma = (d - E)/d."""
    if not (0 < E <= Eplus and (d is INF or Eplus < d)):
        raise DomainError(f"need 0 < E <= E+ < d, got E={E}, E+={Eplus}, d={d}")
    B = (Eplus + 1) // (Eplus - E + 1)
    gamma = Fraction(1) if d is INF else Fraction(d - E, d)
    return B, gamma


# plans


@dataclass
class Plan:
    kind: str  # line | space | curve
    mode: str  # two-radius | one-radius
    inputs: dict
    values: dict = dc_field(default_factory=dict)
    margins: dict = dc_field(default_factory=dict)  # distance of each rounded quantity to an integer
    flagged: list = dc_field(default_factory=list)
    stable: bool = True
    audit: object = None

    @property
    def audit_negative(self):
        return self.audit is not None and self.audit < 0

    def to_json(self):
        def conv(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, mpmath.mpf):
                return mpmath.nstr(v, 30)
            return v

        return {
            "kind": self.kind,
            "mode": self.mode,
            "inputs": {k: conv(v) for k, v in self.inputs.items()},
            "values": {k: conv(v) for k, v in self.values.items()},
            "margins": {k: conv(v) for k, v in self.margins.items()},
            "flagged": self.flagged,
            "stable": self.stable,
            "audit": conv(self.audit),
            "audit_negative": self.audit_negative,
        }

    def to_text(self):
        d = self.to_json()
        rows = [("kind", d["kind"]), ("mode", d["mode"])]
        rows += [(k, v) for k, v in d["inputs"].items() if v is not None]
        rows += list(d["values"].items())
        rows += [("audit", d["audit"]), ("audit_negative", d["audit_negative"]), ("stable", d["stable"])]
        if d["flagged"]:
            rows.append(("flagged", ",".join(d["flagged"])))
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _mp_ceil(x):
    c = int(mpmath.ceil(x))
    return c, abs(x - mpmath.nint(x))


def _mp_floor(x):
    f = int(mpmath.floor(x))
    return f, abs(x - mpmath.nint(x))


def _two_radius(kind, R, eps, rho, n, degree, dps):
    with mpmath.workdps(dps):
        a = a_eps(eps, dps)
        b = b_eps(eps, dps)
        Rm, em, rm = _mp(R), _mp(eps), _mp(rho)
        if not rm < 1 - Rm - em - a:
            raise AdmissibilityViolation("rho < 1 - R - eps - a_eps fails")
        delta = 1 - Rm - a
        v, m = {"a_eps": a, "b_eps": b, "delta": delta}, {}
        if kind == "line":
            ell = frac_ceil(2 * (1 - R) / eps) - 1
            K, m["K"] = _mp_ceil((1 + rm / em) * (delta / (delta - rm)) ** ell)
            v.update(ell=ell, K=K)
            audit = 2 * (1 - Rm) + (ell + 3) * (rm + b - (1 - Rm))
            need = K + 1
        else:
            lam = frac_ceil((degree + 1) * (1 - R) / eps) - degree - 2
            factor = degree if kind == "curve" else 1
            tau, m["tau"] = _mp_ceil(factor * (1 + rm / em) * (delta / (delta - rm)) ** lam)
            v.update(lam=lam, tau=tau)
            audit = (degree + 1) * (1 - Rm) + (degree + lam + 2) * (rm + b - (1 - Rm))
            need = tau + 1
        alphabet = (2 / em) ** (1 / em)
        v["alphabet_floor"] = alphabet
        v["q_min"] = mpmath.mpf(max(alphabet, need))
        v["q_min_int"] = max(int(mpmath.ceil(alphabet)), need)
        v["q_simplified"] = (2 / em) ** (2 / em)
        if n is not None:
            E = frac_floor(rho * n)
            v["E"] = E
            v["E_plus"] = E + frac_ceil(eps * n)
            v["r"] = (1 - R) * n
            v["d_n"], m["d_n"] = _mp_floor(delta * n)
        return v, m, audit


def _one_radius(kind, R, eps, rho, n, degree):
    if not rho < 1 - R - eps:
        raise AdmissibilityViolation("rho < 1 - R - eps fails")
    if n is None:
        raise AdmissibilityViolation("one-radius plans need n")
    delta = 1 - R - eps
    E = frac_floor(rho * n)
    d_n = frac_floor(delta * n)
    if not d_n > E:
        raise AdmissibilityViolation(f"d_n = {d_n} must exceed E = {E}; increase n")
    v = {"delta": delta, "E": E, "E_plus": E, "d_n": d_n, "r": (1 - R) * n}
    ratio = Fraction(d_n, d_n - E)
    if kind == "curve":
        lam = frac_ceil((degree + 1) * (1 - R) / eps) - degree - 1
        K = frac_floor(degree * (E + 1) * ratio**lam)
        v.update(lam=lam, K=K)
        audit = (degree + 1) * (1 - R) + (degree + lam + 2) * (rho - (1 - R))
    else:
        ell = frac_ceil(2 * (1 - R) / eps) - 1
        K = frac_floor((E + 1) * ratio**ell)
        v.update(ell=ell, K=K)
        audit = 2 * (1 - R) + (ell + 3) * (rho - (1 - R))
    v["q_min_int"] = K + 2
    with mpmath.workdps(DPS):
        em = _mp(eps)
        v["alphabet_floor"] = (2 / em) ** (1 / em)
    return v, audit


def plan(kind="line", mode="two-radius", R="1/2", eps="1/10", rho="1/10", n=None, degree=1):
    """Derived parameters of the explicit recipes.  kind: line | space | curve; degree = m or l."""
    R, eps, rho = as_fraction(R), as_fraction(eps), as_fraction(rho)
    if kind not in ("line", "space", "curve"):
        raise ValueError(f"unknown kind {kind}")
    if kind == "line":
        degree = 1
    if not 0 < R < 1:
        raise AdmissibilityViolation("0 < R < 1 fails")
    if not 0 < eps < (1 - R) / 2:
        raise AdmissibilityViolation("0 < eps < (1-R)/2 fails")
    if not rho > 0:
        raise AdmissibilityViolation("rho > 0 fails")
    if degree < 1:
        raise AdmissibilityViolation("degree >= 1 fails")
    inputs = {"R": R, "eps": eps, "rho": rho, "n": n, "degree": degree}
    p = Plan(kind, mode, inputs)
    if mode == "two-radius":
        # digits are counted after the integer part, so scale by the size of the largest output
        rough, _, _ = _two_radius(kind, R, eps, rho, n, degree, 15)
        mag = max(len(str(x)) for x in rough.values() if isinstance(x, int))
        v, m, audit = _two_radius(kind, R, eps, rho, n, degree, DPS + mag)
        v2, m2, _ = _two_radius(kind, R, eps, rho, n, degree, CHECK_DPS + mag)
        ints = [k for k, x in v.items() if isinstance(x, int)]
        p.stable = all(v[k] == v2[k] for k in ints)
        p.values, p.margins, p.audit = v, m2, audit
        p.flagged = [k for k, x in m2.items() if x < BOUNDARY_EPS]
    elif mode == "one-radius":
        v, audit = _one_radius(kind, R, eps, rho, n, degree)
        p.values, p.audit = v, audit
    else:
        raise ValueError(f"unknown mode {mode}")
    return p


# union bounds


def _logq(x, q):
    if x == 0:
        return mpmath.ninf
    return mpmath.log(x) / mpmath.log(q)


def union_bound(kind, n, q, r, E, Eplus, K, s, d, degree=1):
    """log_q of the probability bound for a bad line, m-space or degree-l curve."""
    # these bounds only need E < d, not E+ < d
    if not (0 < E <= Eplus and (d is INF or E < d)):
        raise DomainError(f"need 0 < E <= E+ and E < d, got E={E}, E+={Eplus}, d={d}")
    B = (Eplus + 1) // (Eplus - E + 1)
    gamma = Fraction(1) if d is INF else Fraction(d - E, d)
    factor = q ** (degree - 1) if kind == "space" else (degree if kind == "curve" else 1)
    if kind == "line" and K < 2:
        raise HypothesisViolation("K >= 2 fails")
    if not K > B * factor / gamma**s:
        raise HypothesisViolation(f"K > B * {factor} * gamma^-s fails")
    vol = ball_volume(n, q, E)
    with mpmath.workdps(DPS):
        if kind == "line":
            return 2 * r + _logq(comb(q, K), q) + _logq(comb(K, s + 3), q) + (s + 3) * (_logq(vol, q) - r)
        if kind == "space":
            m = degree
            inner = comb(K, m + s + 1) * vol ** (m + s + 1) + comb(K, m + s + 2) * vol ** (m + s + 2)
            return _logq(comb(q**m, K), q) - r * (s + 1) + _logq(inner, q)
        if kind == "curve":
            ell = degree
            inner = sum(q ** (h * (ell + 1)) * comb(K, h + s + 1) * vol ** (h + s + 1) for h in range(1, ell + 2))
            return _logq(comb(q, K), q) - r * (s + 1) + _logq(inner, q)
    raise ValueError(f"unknown kind {kind}")


# audit grids

GRID_R = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
GRID_EPS = (Fraction(1, 20), Fraction(1, 10))
GRID_DEGREES = (1, 2, 3)


def rho_sweep(R, eps, mode, points=20):
    """Rationals spread over the admissible rho interval."""
    if mode == "one-radius":
        top = 1 - R - eps
    else:
        with mpmath.workdps(DPS):
            top = Fraction(mpmath.nstr(1 - _mp(R) - _mp(eps) - a_eps(eps), 25))
        top -= Fraction(1, 10**20)
    return [top * i / (points + 1) for i in range(1, points + 1)]


def audit_grid(points=20, n_one_radius=1000):
    """Every proof-exponent audit on the admissible grid; each row carries its value and sign."""
    rows = []
    for R in GRID_R:
        for eps in GRID_EPS:
            for rho in rho_sweep(R, eps, "two-radius", points):
                p = plan("line", "two-radius", R, eps, rho)
                rows.append(("line two-radius", R, eps, rho, 1, p.audit, p.audit_negative, p.stable))
                for m in GRID_DEGREES:
                    p = plan("space", "two-radius", R, eps, rho, degree=m)
                    rows.append(("space two-radius", R, eps, rho, m, p.audit, p.audit_negative, p.stable))
                    p = plan("curve", "two-radius", R, eps, rho, degree=m)
                    rows.append(("curve two-radius", R, eps, rho, m, p.audit, p.audit_negative, p.stable))
            for rho in rho_sweep(R, eps, "one-radius", points):
                p = plan("line", "one-radius", R, eps, rho, n=n_one_radius)
                rows.append(("line one-radius", R, eps, rho, 1, p.audit, p.audit_negative, p.stable))
                for ell in GRID_DEGREES:
                    p = plan("curve", "one-radius", R, eps, rho, n=n_one_radius, degree=ell)
                    rows.append(("curve one-radius", R, eps, rho, ell, p.audit, p.audit_negative, p.stable))
    return rows


GRID_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)
GRID_EPS_ENTROPY = (Fraction(1, 2), Fraction(7, 10), Fraction(9, 10))


def entropy_grid(points_per_q=10):
    """entropy_bound_check over q in GRID_Q and rho spread over (0, 1-1/q]."""
    rows = []
    for q in GRID_Q:
        top = 1 - Fraction(1, q)
        for i in range(1, points_per_q + 1):
            rho = top * i / points_per_q
            if rho >= 1:
                continue
            for eps in (None,) + GRID_EPS_ENTROPY:
                rows.append((q, rho, eps, entropy_bound_check(rho, q, eps)))
    return rows


def k_over_n(kind="line", R="1/2", eps="1/10", rho="1/5", degree=1, sizes=(10**2, 10**3, 10**4, 10**5)):
    """K/n for the one-radius recipe at growing n; the ratio settles to a constant."""
    return [(n, Fraction(plan(kind, "one-radius", R, eps, rho, n=n, degree=degree).values["K"], n)) for n in sizes]
