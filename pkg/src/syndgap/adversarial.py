"""The no-slack pair: a line with K points at weight exactly E and all others at E+1.

On a code of minimum distance >= 2E+2 its syndrome line meets H_E in at
least K points without lying inside H_E, so over a fixed alphabet no
threshold below (K-1)/q works when E+ = E.
"""
from dataclasses import dataclass

import numpy as np

from .ball import SyndromeBallQuery, enumerate_ball
from .codes import DEFAULT_CAP, INF, low_weight_codewords, sample_code, syndrome_keys
from .errors import DistanceTooSmall, NotFound, ParameterViolation
from .rng import derive_seed, make_rng


@dataclass
class NoSlackInstance:
    n: int
    q: int
    E: int
    K: int
    alphas: tuple
    x1: np.ndarray
    x2: np.ndarray
    i_coords: tuple
    j_coords: tuple

    def weight_profile(self, F):
        """wt(x1 + a x2) for every a in F_q."""
        pts = F.add(self.x1[None, :], F.mul(F.elements()[:, None], self.x2[None, :]))
        return np.count_nonzero(pts, axis=1)

    def to_json(self):
        return {
            "n": self.n,
            "q": self.q,
            "E": self.E,
            "K": self.K,
            "alphas": list(self.alphas),
            "x1": self.x1.tolist(),
            "x2": self.x2.tolist(),
            "i_coords": list(self.i_coords),
            "j_coords": list(self.j_coords),
        }


def build_no_slack_pair(F, n, E, K, alphas, policy="prefix", seed=None):
    """x2 = indicator of i_1..i_K; x1 = -alpha_t at i_t and 1 at j_1..j_{E+1-K}."""
    q = F.q
    alphas = tuple(int(a) for a in alphas)
    if not 1 <= K:
        raise ParameterViolation("1 <= K fails")
    if not K <= E + 1:
        raise ParameterViolation("K <= E+1 fails")
    if not E + 1 < n:
        raise ParameterViolation("E+1 < n fails")
    if not K < q:
        raise ParameterViolation("K < q fails")
    if len(alphas) != K or len(set(alphas)) != K:
        raise ParameterViolation("alphas must be K pairwise distinct field elements")
    if policy == "prefix":
        coords = list(range(E + 1))
    elif policy == "permutation":
        coords = [int(c) for c in make_rng(seed).permutation(n)[: E + 1]]
    else:
        raise ValueError(f"unknown coordinate policy {policy}")
    i_coords, j_coords = tuple(coords[:K]), tuple(coords[K:])
    x1 = np.zeros(n, dtype=np.int64)
    x2 = np.zeros(n, dtype=np.int64)
    for t, i in enumerate(i_coords):
        x2[i] = 1
        x1[i] = F.neg(alphas[t])
    for j in j_coords:
        x1[j] = 1
    inst = NoSlackInstance(n, q, E, K, alphas, x1, x2, i_coords, j_coords)
    prof = inst.weight_profile(F)
    want = np.full(q, E + 1)
    want[list(alphas)] = E
    if not np.array_equal(prof, want):
        raise AssertionError("weight profile check failed")
    return inst


def certify_violation(C, inst, ball=None, budget=DEFAULT_CAP):
    """Certificate that the syndrome line of the pair meets H_E K times without lying in H_E."""
    F = C.F
    E = inst.E
    d = C.min_distance(budget)
    if d is not INF and d < 2 * E + 2:
        low = low_weight_codewords(C, d, limit=1)
        raise DistanceTooSmall(d, low[0] if low else None)
    if ball is None or ball.E != E:
        ball = enumerate_ball(SyndromeBallQuery(C, E, budget=budget))
    s0, s1 = C.syndrome(inst.x1), C.syndrome(inst.x2)
    members = []
    for a in inst.alphas:
        x = F.add(inst.x1, F.mul(a, inst.x2))
        members.append({"alpha": a, "syndrome": C.syndrome(x).tolist(), "preimage": x.tolist()})
    keys = syndrome_keys(F.q, np.array([m["syndrome"] for m in members]))
    distinct = len(set(keys.tolist())) == inst.K
    outside = [a for a in range(F.q) if a not in inst.alphas]
    a_star = outside[0]
    s_star = F.add(s0, F.mul(a_star, s1))
    pts = F.add(s0[None, :], F.mul(F.elements()[:, None], s1[None, :]))
    count = int(np.sum(ball.contains(pts)))
    cert = {
        "code": C.to_json(),
        "distance": str(d),
        "instance": inst.to_json(),
        "s0": s0.tolist(),
        "s1": s1.tolist(),
        "members": members,
        "distinct": distinct,
        "count_in_ball": count,
        "alpha_star": a_star,
        "alpha_star_syndrome": s_star.tolist(),
        "alpha_star_in_ball": bool(ball.contains(s_star)),
    }
    cert["holds"] = distinct and count >= inst.K and not cert["alpha_star_in_ball"]
    return cert


def verify_certificate(cert, budget=DEFAULT_CAP):
    """Re-check a certificate from scratch, including a fresh enumeration of H_E."""
    from .codes import LinearCode

    C = LinearCode.from_json(cert["code"])
    F = C.F
    E = cert["instance"]["E"]
    s0 = np.array(cert["s0"])
    s1 = np.array(cert["s1"])
    for m in cert["members"]:
        x = np.array(m["preimage"])
        if np.count_nonzero(x) > E or not np.array_equal(C.syndrome(x), m["syndrome"]):
            return False
        if not np.array_equal(F.add(s0, F.mul(m["alpha"], s1)), m["syndrome"]):
            return False
    keys = syndrome_keys(F.q, np.array([m["syndrome"] for m in cert["members"]]))
    if len(set(keys.tolist())) != len(keys):
        return False
    ball = enumerate_ball(SyndromeBallQuery(C, E, budget=budget))
    s_star = F.add(s0, F.mul(cert["alpha_star"], s1))
    if ball.contains(s_star) or cert["alpha_star"] in [m["alpha"] for m in cert["members"]]:
        return False
    return True


def find_code_with_distance(n, r, F, d_target, max_tries, seed, cap=DEFAULT_CAP):
    """First code in the seeded stream with d(C) >= d_target."""
    best = None
    for i in range(max_tries):
        C = sample_code(n, r, F, derive_seed(seed, "code", i))
        d = C.min_distance(cap)
        if d is INF or d >= d_target:
            return C
        best = d if best is None else max(best, d)
    raise NotFound(best)


# the floored space/curve threshold

FLOOR_EXAMPLES = {
    # kind: (q, degree, coefficient rows u_0..u_k, E, E+, (zero columns appended, r, code seed))
    "space": (3, 2, [[0, 0, 0, 1, 1], [0, 0, 1, 1, 2], [1, 1, 0, 1, 1]], 2, 4, (3, 6, 2)),
    "curve": (3, 2, [[0, 0, 1], [1, 1, 0], [1, 2, 2]], 1, 2, (3, 3, 1)),
}


def floor_counterexample(kind="space", code="zero"):
    """A witness with K gamma^(t-h) > floor((E+ + 1)/(E+ - E + 1)) * factor and no correlated agreement.

    Returns (C, W, verdict, ca_decision).  code="zero" uses H = I: the only
    lift of the target is the coefficient matrix itself, whose support
    exceeds E+.  code="sampled" pads the coefficients with zero columns and
    uses a fixed sampled code of distance > E+ (d = 5 for the space, 3 for
    the curve).  Every element of the object inside B_E becomes a witness
    column, and the rank equals the target rank, so gamma plays no role.
    """
    from .agreement import ca_decide
    from .codes import LinearCode
    from .field import field_make
    from .geometry import AffineObject, all_points
    from .witness import EvaluationDesign, WitnessMatrix, threshold_check

    q, deg, rows, E, Eplus, (extra, r, seed) = FLOOR_EXAMPLES[kind]
    F = field_make(q)
    U = np.array(rows, dtype=np.int64)
    if code == "zero":
        C = LinearCode(F, np.eye(U.shape[1], dtype=np.int64))
        d = INF
    elif code == "sampled":
        U = np.hstack([U, np.zeros((U.shape[0], extra), dtype=np.int64)])
        C = sample_code(U.shape[1], r, F, seed)
        d = C.min_distance()
    else:
        raise ValueError(f"unknown code choice {code}")
    obj = AffineObject(F, kind, U)
    pts = all_points(F, kind, deg)
    vals = obj.evaluate(pts)
    keep = np.count_nonzero(vals, axis=1) <= E
    design = EvaluationDesign(kind, pts[keep], deg)
    target = AffineObject(F, kind, C.syndromes(U))
    W = WitnessMatrix(target, design, vals[keep].T, E)
    ca = ca_decide(C, target.coeffs, Eplus).decision
    verdict = threshold_check(C, W, Eplus, not ca, d=d)
    return C, W, verdict, ca
