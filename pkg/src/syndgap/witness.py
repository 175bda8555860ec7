"""Witness matrices and the rank-reduction engine.

A witness matrix X (n x K) has columns x_j of weight <= E with H x_j equal
to the target object evaluated at design point j.  Writing U for the design
rows and S for the target coefficient syndromes, HX = S U.  One reduction
step finds a codeword hiding in X's row-space decomposition and keeps only
the columns vanishing where that codeword is most often cancelled; rank
drops by one while a (|supp c| - E)/|supp c| fraction of columns survives.
The same step serves lines, m-spaces and curves; only U and h differ.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil

import numpy as np

from . import linalg
from .codes import INF, low_weight_codewords
from .errors import (
    DegenerateTarget,
    DesignDegenerate,
    InfeasibleBudget,
    MissingDistance,
    NotAWitness,
    RankTooLow,
    ThresholdUnderflow,
)
from .geometry import AffineObject, bound_B, evaluation_rows
from .rng import make_rng


@dataclass
class EvaluationDesign:
    kind: str
    points: np.ndarray
    degree: int  # 1 for lines, m for spaces, l for curves

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.int64)
        if self.kind == "space":
            self.points = self.points.reshape(len(self.points), self.degree)

    def __len__(self):
        return len(self.points)

    def rows(self, F):
        return evaluation_rows(F, self.kind, self.points, self.degree)

    def distinct(self):
        pts = self.points.reshape(len(self.points), -1)
        return len(np.unique(pts, axis=0)) == len(pts)

    def full_rank(self, F):
        return len(self) > 0 and linalg.rank(F, self.rows(F)) == self.degree + 1

    def subset(self, J):
        return EvaluationDesign(self.kind, self.points[list(J)], self.degree)

    def to_json(self):
        return {"kind": self.kind, "degree": self.degree, "points": self.points.tolist()}


@dataclass
class WitnessMatrix:
    target: AffineObject  # syndrome-space coefficients s_0..s_k
    design: EvaluationDesign
    X: np.ndarray  # n x K, columns are the witness vectors
    E: int

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.int64)

    @property
    def K(self):
        return self.X.shape[1]

    def restrict(self, J):
        J = list(J)
        return WitnessMatrix(self.target, self.design.subset(J), self.X[:, J], self.E)

    def to_json(self):
        return {
            "kind": self.design.kind,
            "target": self.target.coeffs.tolist(),
            "design": self.design.to_json(),
            "columns": self.X.T.tolist(),
            "E": self.E,
        }


@dataclass
class ReductionCertificate:
    retained: tuple  # indices into the input witness's columns
    codeword: np.ndarray = None  # None with the marker set
    pivot: int = None
    rank_before: int = None
    rank_after: int = None
    support_size: int = None
    retained_fraction: Fraction = None  # (|supp c| - E)/|supp c|
    retained_bound: int = None  # ceil(K * retained_fraction)
    distance_fraction: Fraction = None  # (d - E)/d when d is known
    already_lower: bool = False

    def to_json(self):
        return {
            "retained": list(self.retained),
            "codeword": None if self.codeword is None else self.codeword.tolist(),
            "pivot": self.pivot,
            "rank_before": self.rank_before,
            "rank_after": self.rank_after,
            "support_size": self.support_size,
            "retained_fraction": str(self.retained_fraction),
            "retained_bound": self.retained_bound,
            "distance_fraction": None if self.distance_fraction is None else str(self.distance_fraction),
            "already_lower": self.already_lower,
        }


def verify_witness(C, W):
    """(ok, violation) with violation = (column, 'syndrome' | 'weight') for the first failure."""
    F = C.F
    expected = W.target.evaluate(W.design.points) if W.K else np.zeros((0, C.r), dtype=np.int64)
    got = C.syndromes(W.X.T)
    for j in range(W.K):
        if not np.array_equal(got[j], expected[j]):
            return False, (j, "syndrome")
        if np.count_nonzero(W.X[:, j]) > W.E:
            return False, (j, "weight")
    return True, None


def _check_design(F, W):
    if not W.design.distinct():
        raise DesignDegenerate("design points are not pairwise distinct")
    if not W.design.full_rank(F):
        if W.design.kind == "space":
            raise DesignDegenerate("design points lie in an affine hyperplane")
        raise DesignDegenerate("design rows are not independent")


def _target_rank(F, W):
    h = W.target.h
    if W.design.kind == "line" and h != 2:
        raise DegenerateTarget("line target must have dim span{s0, s1} = 2")
    return h


def reduce_rank_once(C, W, d=None, extension=None):
    """One rank-reduction step; returns (W', certificate).

    `extension` optionally replaces the completion rows taken from X by
    caller-supplied rows (together with Row(HX) they must span a superset of
    Row(X)); a zero eliminated coefficient then becomes possible and is
    reported with the 'already lower' marker.
    """
    F = C.F
    _check_design(F, W)
    h = _target_rank(F, W)
    ok, bad = verify_witness(C, W)
    if not ok:
        raise NotAWitness(f"column {bad[0]} fails the {bad[1]} condition")
    t = linalg.rank(F, W.X)
    if extension is None and t <= h:
        raise RankTooLow(f"rank {t} <= base rank {h}")

    Y = F.matmul(C.H, W.X)
    basis, completion = linalg.row_space_tools(F, W.X, list(Y))
    if len(basis) != h:
        raise DesignDegenerate("row space of HX does not have the target's dimension")
    if extension is not None:
        completion = [np.asarray(e, dtype=np.int64) for e in extension]
    Wb = np.vstack(basis + completion)
    M = linalg.express_in_row_basis(F, W.X, Wb)
    cols = M[:, h:]
    if np.any(F.matmul(C.H, cols)):
        raise AssertionError("eliminated coefficient is not a codeword")

    weights = np.count_nonzero(cols, axis=0)
    K = W.K
    if cols.shape[1] == 0 or weights.max() == 0:
        cert = ReductionCertificate(tuple(range(K)), rank_before=t, rank_after=t, already_lower=True)
        return W, cert

    # largest support, smallest index on ties
    ci = int(np.flatnonzero(weights == weights.max())[0])
    c = cols[:, ci].copy()
    supp = np.flatnonzero(c)
    if d is not None and d is not INF and len(supp) < d:
        raise AssertionError("eliminated codeword lighter than the minimum distance")
    zeros = np.count_nonzero(W.X[supp, :] == 0, axis=1)
    h0 = int(supp[int(np.argmax(zeros))])
    J = tuple(int(j) for j in np.flatnonzero(W.X[h0, :] == 0))

    frac = Fraction(len(supp) - W.E, len(supp))
    need = max(0, ceil(K * frac))
    if len(J) < need:
        raise AssertionError("pigeonhole bound violated")

    # closed-form substitution: x_j = sum_{l != c} (m_l - (m_l[h0]/c[h0]) c) w_l(j) on J
    col = h + ci
    scale = F.div(M[h0, :], c[h0])
    M2 = F.sub(M, F.mul(c[:, None], scale[None, :]))
    keep = [i for i in range(M.shape[1]) if i != col]
    if J and not np.array_equal(F.matmul(M2[:, keep], Wb[keep][:, list(J)]), W.X[:, list(J)]):
        raise AssertionError("substituted representation does not reproduce X_J")

    W2 = W.restrict(J)
    rank_after = linalg.rank(F, W2.X) if J else 0
    if rank_after > t - 1:
        raise AssertionError("rank did not drop")
    cert = ReductionCertificate(
        retained=J,
        codeword=c,
        pivot=h0,
        rank_before=t,
        rank_after=rank_after,
        support_size=len(supp),
        retained_fraction=frac,
        retained_bound=need,
        distance_fraction=None if d is None or d is INF else Fraction(d - W.E, d),
    )
    return W2, cert


def degeneracy_threshold(kind, degree, q):
    """Retained counts at or below this may leave the design rows dependent."""
    if kind == "space":
        return q ** (degree - 1)
    if kind == "curve":
        return degree
    return 1


@dataclass
class BaseResult:
    coefficients: np.ndarray  # (k+1) x n: a_0..a_k with H a_i = s_i
    retained: tuple  # indices into the original witness
    chain: list = dc_field(default_factory=list)
    witness: WitnessMatrix = None


def reduce_to_base(C, W, d=None):
    """Iterate reduction until rank(X) = h, then read off the parametrization on the survivors."""
    F = C.F
    _check_design(F, W)
    h = _target_rank(F, W)
    thr = degeneracy_threshold(W.design.kind, W.design.degree, F.q)
    idx = list(range(W.K))
    cur = W
    chain = []
    while linalg.rank(F, cur.X) > h:
        nxt, cert = reduce_rank_once(C, cur, d)
        if cert.already_lower:
            break
        idx = [idx[j] for j in cert.retained]
        chain.append(cert)
        cur = nxt
        if len(idx) <= thr:
            raise ThresholdUnderflow(f"{len(idx)} retained columns, threshold {thr}")
    U = cur.design.rows(F)
    A = linalg.express_in_row_basis(F, cur.X, U)  # n x (k+1)
    coeffs = A.T.copy()
    if not np.array_equal(C.syndromes(coeffs), W.target.coeffs):
        raise AssertionError("parametrization does not map onto the target")
    if not np.array_equal(F.matmul(A, U), cur.X):
        raise AssertionError("parametrization does not reproduce the retained columns")
    return BaseResult(coeffs, tuple(idx), chain, cur)


@dataclass
class Verdict:
    applicable: bool
    holds: bool = None
    K: int = None
    t: int = None
    h: int = None
    gamma: Fraction = None
    B: int = None
    lhs: Fraction = None
    rhs: int = None
    rhs_unfloored: Fraction = None  # (E+ + 1)/(E+ - E + 1) times the factor
    holds_unfloored: bool = None
    reason: str = ""
    counterexample: dict = None

    def to_json(self):
        return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.__dict__.items()}


def threshold_check(C, W, Eplus, flag, d=None):
    """Check K gamma^(t-h) <= B * factor, factor 1 (line), q^(m-1) (space), l (curve).

    `flag` must certify the hypothesis: for lines that the target is not
    inside H_{E+}, for spaces and curves that correlated agreement fails.
    E+ < d is enforced; configurations violating it are flagged, not checked.

    `holds` uses the floored B as stated; `holds_unfloored` uses the ratio
    (E+ + 1)/(E+ - E + 1) itself.  For lines the two agree.  For spaces and
    curves the floored form can fail (see adversarial.floor_counterexample), while the
    unfloored form is what the ball-count bounds actually support.
    """
    F = C.F
    if d is None:
        d = C.cached_distance
    if d is None:
        raise MissingDistance("minimum distance unknown; compute it or pass d")
    E = W.E
    if not flag:
        return Verdict(False, reason="hypothesis flag not set")
    if not (0 < E <= Eplus and (d is INF or Eplus < d)):
        return Verdict(False, reason=f"need 0 < E <= E+ < d (E={E}, E+={Eplus}, d={d})")
    if W.design.kind == "line" and W.target.h != 2:
        return Verdict(False, reason="degenerate line")
    K = W.K
    t = linalg.rank(F, W.X)
    h = W.target.h
    gamma = Fraction(1) if d is INF else Fraction(d - E, d)
    B = bound_B(E, Eplus)
    kind, deg = W.design.kind, W.design.degree
    factor = F.q ** (deg - 1) if kind == "space" else (deg if kind == "curve" else 1)
    lhs = K * gamma ** max(0, t - h)
    rhs = B * factor
    rhs_u = Fraction(Eplus + 1, Eplus - E + 1) * factor
    v = Verdict(True, lhs <= rhs, K, t, h, gamma, B, lhs, rhs, rhs_u, lhs <= rhs_u)
    if not v.holds:
        v.counterexample = {"witness": W.to_json(), "Eplus": Eplus, "d": str(d), "flag": True}
    return v


# synthetic witnesses


def _random_points(F, kind, degree, K, rng):
    if kind == "space":
        total = F.q**degree
        if K > total:
            return None
        idx = rng.choice(total, size=K, replace=False)
        powers = F.q ** np.arange(degree - 1, -1, -1)
        return (idx[:, None] // powers[None, :]) % F.q
    if K > F.q:
        return None
    return rng.choice(F.q, size=K, replace=False).astype(np.int64)


def synth_witness(kind, C, t, K, E, seed, degree=1, max_tries=200, max_codeword_weight=None):
    """A witness of rank exactly t for a full-rank target (h = degree + 1).

    t - h codewords are planted, each in its own column.  Coordinates are
    processed greedily: each row of the coefficient matrix is either zero or
    chosen to vanish on the degree + 1 most loaded columns, whichever keeps
    column weights lowest.
    """
    F = C.F
    if kind == "line":
        degree = 1
    h = degree + 1
    p = t - h
    if p < 0:
        raise ValueError("target rank below the base rank")
    if p > C.k:
        raise InfeasibleBudget(f"{p} planted codewords exceed the code dimension {C.k}")
    if K < h + p:
        raise InfeasibleBudget("too few columns for the requested rank")
    rng = make_rng(seed)
    pool = []
    if p:
        wmax = max_codeword_weight or min(C.n, 2 * E)
        pool = _codeword_pool(C, wmax, make_rng(seed, "pool"))
        if len(pool) < p:
            raise InfeasibleBudget("not enough low-weight codewords")
    n = C.n
    for _ in range(max_tries):
        pts = _random_points(F, kind, degree, K, rng)
        if pts is None:
            raise InfeasibleBudget("more design points than the evaluation domain")
        design = EvaluationDesign(kind, pts, degree)
        U = design.rows(F)
        if linalg.rank(F, U) != h:
            continue
        if p:
            pick = rng.choice(len(pool), size=p, replace=False)
            Cp = np.array([pool[i] for i in pick])
            if linalg.rank(F, Cp) != p:
                continue
            planted = rng.choice(K, size=p, replace=False)
            rest = [j for j in range(K) if j not in set(planted.tolist())]
            if linalg.rank(F, U[:, rest]) != h:
                continue
        g = np.zeros((n, K), dtype=np.int64)
        for l in range(p):
            g[:, planted[l]] = Cp[l]
        A = np.zeros((n, h), dtype=np.int64)
        load = np.zeros(K, dtype=np.int64)
        order = list(rng.permutation(n))
        order.sort(key=lambda i: -np.count_nonzero(g[i]))
        for i in order:
            if not np.any(g[i]):
                continue
            best_row, best_a = g[i], np.zeros(h, dtype=np.int64)
            for Z in _vanishing_sets(load, h, U, F, rng):
                a = linalg.solve_linear(F, U[:, Z].T, F.neg(g[i, Z]))
                if a is None:
                    continue
                row = F.add(F.matmul(U.T, a), g[i])
                if _score(load, row) < _score(load, best_row):
                    best_row, best_a = row, a
            A[i] = best_a
            load += best_row != 0
        # give the target full rank using otherwise unused coordinates
        free = [i for i in rng.permutation(n) if not np.any(A[i]) and not np.any(g[i])]
        while linalg.rank(F, C.syndromes(A.T)) < h and free:
            i = free.pop()
            Z = list(np.argsort(-load, kind="stable")[: h - 1])
            a = _random_vanishing(F, U, Z, rng)
            if a is None:
                continue
            A[i] = a
            load += F.matmul(U.T, a) != 0
        X = F.add(F.matmul(A, U), g)
        if np.count_nonzero(X, axis=0).max() > E:
            continue
        target = AffineObject(F, kind, C.syndromes(A.T))
        if target.h != h or linalg.rank(F, X) != t:
            continue
        W = WitnessMatrix(target, design, X, E)
        if verify_witness(C, W)[0]:
            return W
    raise InfeasibleBudget(f"no construction found in {max_tries} tries")


def _codeword_pool(C, wmax, rng, samples=4000, keep=300):
    """Distinct nonzero codewords of weight <= wmax, lightest first.

    Random combinations of the kernel basis are tried first; the exhaustive
    support search is the fallback when sampling finds too few.
    """
    F = C.F
    coeffs = rng.integers(0, F.q, size=(samples, C.k))
    words = F.matmul(coeffs, C.kernel_basis)
    w = np.count_nonzero(words, axis=1)
    words = words[(w > 0) & (w <= wmax)]
    if len(words) < 10:
        return low_weight_codewords(C, min(wmax, C.n - C.k + 1), limit=keep)
    words = np.unique(words, axis=0)
    order = np.lexsort((rng.random(len(words)), np.count_nonzero(words, axis=1)))
    return [words[i] for i in order[:keep]]


def _score(load, row):
    new = load + (row != 0)
    return (int(new.max()), int(new.sum()))


def _vanishing_sets(load, h, U, F, rng, tries=4):
    """Candidate column sets of size h: the most loaded ones, then random ones."""
    K = len(load)
    order = np.lexsort((rng.random(K), -load))
    yield [int(j) for j in order[:h]]
    for _ in range(tries):
        yield [int(j) for j in rng.choice(K, size=min(h, K), replace=False)]


def _random_vanishing(F, U, Z, rng):
    """A random nonzero coefficient row whose evaluation vanishes on the columns Z."""
    h = U.shape[0]
    ker = linalg.nullspace(F, U[:, Z].T) if Z else np.eye(h, dtype=np.int64)
    if ker.shape[0] == 0:
        return None
    for _ in range(20):
        coeffs = rng.integers(0, F.q, size=ker.shape[0])
        a = F.matmul(coeffs[None, :], ker)[0]
        if np.any(a):
            return a
    return None


def witness_from_ball(C, target, design_points, ball, E):
    """Witness built from stored H_E preimages at the given design points."""
    F = C.F
    kind, deg = target.kind, target.degree
    design = EvaluationDesign(kind, design_points, deg)
    vals = target.evaluate(design.points)
    cols = [ball.preimage(v) for v in vals]
    if any(c is None for c in cols):
        raise NotAWitness("a design point is not in H_E")
    X = np.array(cols, dtype=np.int64).T.reshape(C.n, len(cols))
    return WitnessMatrix(target, design, X, E)
