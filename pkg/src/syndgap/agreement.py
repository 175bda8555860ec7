"""Deciders for proximity gaps and correlated agreement on concrete codes."""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import linalg
from .codes import DEFAULT_CAP, syndrome_keys
from .errors import BudgetExceeded, HypothesisUnmet
from .geometry import AffineObject, affine_subspaces, classify_line, line_points, syndrome_line_table
from .hamming import words_up_to


@dataclass
class CAResult:
    decision: bool
    X: np.ndarray = None  # n x (k+1), H X[:, i] = s_i, rowwt <= E+
    support: tuple = None

    def verify(self, C, targets, Eplus):
        if not self.decision:
            return True
        S = np.atleast_2d(targets)
        return np.array_equal(C.syndromes(self.X.T), S) and linalg.row_weight(self.X)[1] <= Eplus


def _spans(F, HT, S, base_rank=None):
    """Whether every column of S lies in the column span of HT."""
    if HT.shape[1] == 0:
        return not np.any(S)
    rk = linalg.rank(F, HT) if base_rank is None else base_rank
    return linalg.rank(F, np.hstack([HT, S])) == rk


def ca_decide(C, targets, Eplus, budget=DEFAULT_CAP):
    """Is there T with |T| <= E+ such that every s_i lies in span(H_T)?

    When yes, T is the lexicographically first support of minimal size and
    X solves H_T z = s_i with free variables zero.
    """
    F = C.F
    targets = np.atleast_2d(np.asarray(targets, dtype=np.int64))
    S = targets.T  # r x (k+1)
    n = C.n
    Eplus = min(Eplus, n)
    k1 = targets.shape[0]
    if not np.any(S):
        return CAResult(True, np.zeros((n, k1), dtype=np.int64), ())
    cost = sum(comb(n, i) for i in range(Eplus + 1))
    if cost > budget:
        raise BudgetExceeded(cost, budget, "ca_decide")
    # monotone in T, so the maximal supports settle the decision
    if not any(_spans(F, C.H[:, T], S) for T in combinations(range(n), Eplus)):
        return CAResult(False)
    for size in range(1, Eplus + 1):
        for T in combinations(range(n), size):
            HT = C.H[:, T]
            if _spans(F, HT, S):
                X = np.zeros((n, k1), dtype=np.int64)
                for i in range(k1):
                    X[list(T), i] = linalg.solve_linear(F, HT, S[:, i])
                return CAResult(True, X, T)
    raise AssertionError("decision and minimal search disagree")


def min_union_support(C, coeffs, budget=DEFAULT_CAP):
    """min over codeword tuples (c_0..c_k) of |union_i supp(u_i - c_i)|, by brute force."""
    F = C.F
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=np.int64))
    total = C.q**C.k
    if total * len(coeffs) > budget or C.n > 62:
        raise BudgetExceeded(total * len(coeffs), budget, "min_union_support")
    words = np.vstack(list(C.codewords()))
    bits = np.int64(1) << np.arange(C.n, dtype=np.int64)
    masks = None
    for u in coeffs:
        m = np.unique((F.sub(u[None, :], words) != 0) @ bits)
        masks = m if masks is None else np.unique(masks[:, None] | m[None, :])
    return int(min(bin(int(v)).count("1") for v in masks))


def reformulation_crosscheck(C, U, Eplus, budget=DEFAULT_CAP):
    """Compare the codeword-tuple brute force with ca_decide on the pushed-forward object.

    Returns (agree, brute_force_side, decider_side).
    """
    coeffs = U.coeffs if isinstance(U, AffineObject) else np.atleast_2d(U)
    left = min_union_support(C, coeffs, budget) <= Eplus
    right = ca_decide(C, C.syndromes(coeffs), Eplus, budget).decision
    return left == right, left, right


@dataclass
class GapReport:
    object_id: str
    count: int  # distinct points of the object inside H_E
    total: int  # distinct points of the object
    contained: bool  # all points inside H_{E+}
    eval_count: int = None  # evaluations (with multiplicity) inside H_E
    eval_total: int = None
    threshold: object = None
    violation: bool = False

    @property
    def ratio(self):
        return Fraction(self.count, self.total)

    @property
    def eval_ratio(self):
        return Fraction(self.eval_count, self.eval_total)


def gap_check_line(C, L, E, Eplus, balls, K=None):
    """Exact |L cap H_E| and containment; a violation at K means count >= K+1 and not contained."""
    F = C.F
    obj = L.as_object(F)
    keys, pts = obj.distinct_points()
    if L.dim_flag <= 1:
        count = classify_line(F, L, balls[E]).count
    else:
        count = int(np.sum(balls[E].contains_keys(keys)))
    contained = bool(np.all(balls[Eplus].contains_keys(keys)))
    evals = obj.evaluate()
    ev = int(np.sum(balls[E].contains(evals)))
    viol = K is not None and count >= K + 1 and not contained
    oid = L.object_id or f"L{int(syndrome_keys(F.q, L.s0[None])[0])}:{int(syndrome_keys(F.q, L.s1[None])[0])}"
    return GapReport(oid, count, len(keys), contained, ev, F.q, K, viol)


def gap_check_space(C, S, E, Eplus, balls, tau=None, budget=DEFAULT_CAP, object_id=""):
    """Exact ratio |S cap H_E|/|S| over distinct points, plus the evaluation-count ratio."""
    F = C.F
    npts = F.q ** S.degree if S.kind == "space" else F.q
    if npts > budget:
        raise BudgetExceeded(npts, budget, "gap_check_space")
    evals = S.evaluate()
    ekeys = syndrome_keys(F.q, evals)
    keys = np.unique(ekeys)
    count = int(np.sum(balls[E].contains_keys(keys)))
    contained = bool(np.all(balls[Eplus].contains_keys(keys)))
    ev = int(np.sum(balls[E].contains_keys(ekeys)))
    rep = GapReport(object_id, count, len(keys), contained, ev, len(evals), tau)
    rep.violation = tau is not None and rep.ratio > tau and not contained
    return rep


def max_list_size(C, E, budget=DEFAULT_CAP):
    """max over words y of |{c : d(y, c) <= E}|, i.e. the largest syndrome multiplicity in B_E."""
    from .hamming import ball_volume

    cost = ball_volume(C.n, C.q, E)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "max_list_size")
    counts = {}
    for block in words_up_to(C.n, C.q, E):
        k, c = np.unique(syndrome_keys(C.q, C.syndromes(block)), return_counts=True)
        for a, b in zip(k.tolist(), c.tolist()):
            counts[a] = counts.get(a, 0) + b
    return max(counts.values())


@dataclass
class LiftingReport:
    mode: str
    tau: Fraction
    lifted_tau: Fraction
    antecedent_holds: bool
    lines_checked: int
    spaces_checked: int
    violations: list = dc_field(default_factory=list)
    list_size: int = None
    note: str = ""

    @property
    def passed(self):
        return not self.violations


def _all_line_counts(C, ball_E, ball_Ep, budget):
    F = C.F
    S0, S1 = syndrome_line_table(C.r, F, budget=budget)
    keys = syndrome_keys(F.q, line_points(F, S0, S1))
    counts = ball_E.contains_keys(keys).sum(axis=1)
    contained = ball_Ep.contains_keys(keys).all(axis=1)
    return S0, S1, counts, contained


def lifting_test(C, E, Eplus, mode="gap", tau=None, budget=DEFAULT_CAP, max_dim=2, balls=None):
    """Empirical check of the line-to-space lifting statements on one code.

    gap mode: with tau the smallest value for which every line L with
    |L cap H_E|/q > tau lies in H_{E+} (or the supplied tau, if the lines
    satisfy it), every affine subspace of dimension <= max_dim with
    |S cap H_E|/|S| > tau q/(q-1) must lie in H_{E+}.

    ca mode (E+ = E): tau is the largest ratio of a line lacking correlated
    agreement at some radius E' <= E; every subspace above tau q/(q-1) must
    have correlated agreement at E.  The list-size hypothesis is checked
    exactly first.
    """
    from .ball import build_ball_sets

    F = C.F
    q = F.q
    if balls is None:
        balls = build_ball_sets(C, range(0, max(E, Eplus) + 1), budget)
    if mode == "gap":
        S0, S1, counts, contained = _all_line_counts(C, balls[E], balls[Eplus], budget)
        bad = counts[~contained]
        measured = Fraction(int(bad.max()), q) if bad.size else Fraction(0)
        if tau is None:
            tau = measured
        elif measured > tau:
            return LiftingReport(mode, tau, None, False, len(S0), 0, note="line-level antecedent fails")
        lifted = tau * q / (q - 1)
        viol, checked = [], 0
        for dim in range(2, max_dim + 1):
            for base, B in affine_subspaces(F, C.r, dim, budget):
                S = AffineObject(F, "space", np.vstack([base, B]))
                rep = gap_check_space(C, S, E, Eplus, balls, lifted, budget)
                checked += 1
                if rep.violation:
                    viol.append({"base": base.tolist(), "directions": B.tolist(), "ratio": str(rep.ratio)})
        return LiftingReport(mode, tau, lifted, True, len(S0), checked, viol)

    if mode != "ca":
        raise ValueError("mode must be 'gap' or 'ca'")
    lsize = max_list_size(C, E, budget)
    if lsize >= q:
        raise HypothesisUnmet(f"list size {lsize} >= q at radius {E}")
    measured = Fraction(0)
    nlines = 0
    for Ep in range(0, E + 1):
        S0, S1, counts, _ = _all_line_counts(C, balls[Ep], balls[Ep], budget)
        nlines = len(S0)
        for i in np.argsort(-counts, kind="stable"):
            ratio = Fraction(int(counts[i]), q)
            if ratio <= measured:
                break
            if not ca_decide(C, np.vstack([S0[i], S1[i]]), Ep, budget).decision:
                measured = ratio
                break
    if tau is None:
        tau = measured
    elif measured > tau:
        return LiftingReport(mode, tau, None, False, nlines, 0, list_size=lsize, note="line-level antecedent fails")
    lifted = tau * q / (q - 1)
    viol, checked = [], 0
    for dim in range(2, max_dim + 1):
        for base, B in affine_subspaces(F, C.r, dim, budget):
            S = AffineObject(F, "space", np.vstack([base, B]))
            rep = gap_check_space(C, S, E, E, balls, lifted, budget)
            checked += 1
            if rep.ratio > lifted and not ca_decide(C, S.coeffs, E, budget).decision:
                viol.append({"base": base.tolist(), "directions": B.tolist(), "ratio": str(rep.ratio)})
    return LiftingReport(mode, tau, lifted, True, nlines, checked, viol, lsize)
