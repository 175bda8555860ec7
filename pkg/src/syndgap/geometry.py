"""Affine lines, affine m-spaces and polynomial curves, in word or syndrome space.

An object is a stack of coefficient vectors c_0..c_k (shape (k+1) x length):
  line   c_0 + a c_1                 (a in F_q)
  space  c_0 + sum_i b_i c_i         (b in F_q^m)
  curve  sum_i a^i c_i               (a in F_q)
so a line is both the space with m = 1 and the curve with degree 1.
"""
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from . import linalg
from .codes import DEFAULT_CAP, syndrome_keys
from .errors import BudgetExceeded, DegenerateDirection, DimensionMismatch
from .hamming import all_words

KINDS = ("line", "space", "curve")


def design_rows(F, kind, points):
    """All-ones row plus the coordinate rows of the points (line or space)."""
    pts = np.asarray(points, dtype=np.int64)
    if kind == "space":
        pts = pts.reshape(len(pts), -1)
        return np.vstack([np.ones((1, len(pts)), dtype=np.int64), pts.T])
    if kind == "line":
        return np.vstack([np.ones(len(pts), dtype=np.int64), pts])
    raise ValueError("use curve_rows for curves")


def curve_rows(F, points, degree):
    pts = np.asarray(points, dtype=np.int64)
    rows = [np.ones(len(pts), dtype=np.int64)]
    for _ in range(degree):
        rows.append(F.mul(rows[-1], pts))
    return np.vstack(rows)


def evaluation_rows(F, kind, points, degree):
    """Design matrix U of shape (degree+1) x K for any kind."""
    if kind == "curve":
        return curve_rows(F, points, degree)
    U = design_rows(F, kind, points)
    if U.shape[0] != degree + 1:
        raise DimensionMismatch("point dimension does not match the object")
    return U


def all_points(F, kind, degree):
    """Every evaluation point: F_q for lines and curves, F_q^m (lexicographic) for spaces."""
    if kind == "space":
        return np.vstack(list(all_words(degree, F.q)))
    return F.elements()


@dataclass
class AffineObject:
    """Parametrized line, m-space or curve with coefficient rows c_0..c_k."""

    F: object
    kind: str
    coeffs: np.ndarray
    h: int = dc_field(init=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind}")
        self.coeffs = np.atleast_2d(np.asarray(self.coeffs, dtype=np.int64))
        if self.kind == "line" and self.coeffs.shape[0] != 2:
            raise DimensionMismatch("a line has two coefficient vectors")
        self.h = linalg.rank(self.F, self.coeffs)

    @property
    def degree(self):
        """m for spaces, l for curves, 1 for lines."""
        return self.coeffs.shape[0] - 1

    @property
    def length(self):
        return self.coeffs.shape[1]

    @property
    def directions_independent(self):
        """Whether c_1..c_k are independent (the space 'has dimension m')."""
        return linalg.rank(self.F, self.coeffs[1:]) == self.degree if self.kind != "curve" else None

    def points(self):
        return all_points(self.F, self.kind, self.degree)

    def design(self, points):
        return evaluation_rows(self.F, self.kind, points, self.degree)

    def evaluate(self, points=None):
        """Rows are the object evaluated at each point."""
        if points is None:
            points = self.points()
        U = self.design(points)
        return self.F.matmul(U.T, self.coeffs)

    def distinct_points(self):
        """Distinct evaluated vectors (as a sorted array of keys and the vectors)."""
        vals = self.evaluate()
        keys = syndrome_keys(self.F.q, vals)
        uk, idx = np.unique(keys, return_index=True)
        return uk, vals[idx]


def line(F, a, b):
    return AffineObject(F, "line", np.vstack([a, b]))


def space(F, coeffs):
    return AffineObject(F, "space", coeffs)


def curve(F, coeffs):
    return AffineObject(F, "curve", coeffs)


def push_forward(C, obj):
    """Apply H to every coefficient vector."""
    if obj.length != C.n:
        raise DimensionMismatch(f"object length {obj.length} != n={C.n}")
    return AffineObject(C.F, obj.kind, C.syndromes(obj.coeffs))


# ball counts in word space


def bound_B(E, Eplus):
    """floor((E+ + 1)/(E+ - E + 1))."""
    return (Eplus + 1) // (Eplus - E + 1)


@dataclass
class BallCount:
    count: int
    support: int  # row weight of the coefficient matrix, or -1 when unused
    contained: bool
    bound: object
    applies: bool  # whether the hypothesis of the bound holds
    floored_bound: int = None  # floor((E+ + 1)/(E+ - E + 1)) times the factor; can fail for m, l >= 2

    @property
    def exceeds_floored(self):
        return self.applies and self.floored_bound is not None and self.count > self.floored_bound

    @property
    def holds(self):
        return (not self.applies) or self.count <= self.bound


def line_ball_count(F, a, b, E, Eplus):
    """|l cap B_E| over the q points of the line a + t b, containment in B_{E+}, and the bound."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if not np.any(b):
        raise DegenerateDirection("direction b is zero")
    if not 0 <= E <= Eplus <= len(a):
        raise ValueError("need 0 <= E <= E+ <= n")
    w = np.count_nonzero(line(F, a, b).evaluate(), axis=1)
    contained = bool(np.all(w <= Eplus))
    return BallCount(int(np.sum(w <= E)), -1, contained, bound_B(E, Eplus), not contained)


def space_ball_count(F, coeffs, E, Eplus, budget=DEFAULT_CAP):
    """Count over all q^m evaluations; the bound (E+ + 1)/(E+ - E + 1) q^(m-1) applies when |Supp(U)| > E+.

    The bound is kept unfloored: flooring the ratio before multiplying by
    q^(m-1) gives a smaller value that some supports exceed (q=3, n=5, m=2).
    """
    obj = space(F, coeffs)
    m = obj.degree
    if F.q**m > budget:
        raise BudgetExceeded(F.q**m, budget, "space_ball_count")
    w = np.count_nonzero(obj.evaluate(), axis=1)
    supp = linalg.row_weight(obj.coeffs.T)[1]
    return BallCount(
        int(np.sum(w <= E)),
        supp,
        bool(np.all(w <= Eplus)),
        Fraction(Eplus + 1, Eplus - E + 1) * F.q ** (m - 1),
        supp > Eplus,
        bound_B(E, Eplus) * F.q ** (m - 1),
    )


def curve_ball_count(F, coeffs, E, Eplus):
    """Count of a in F_q with Gamma(a) in B_E; the bound l (E+ + 1)/(E+ - E + 1) applies when rowwt > E+."""
    obj = curve(F, coeffs)
    ell = obj.degree
    w = np.count_nonzero(obj.evaluate(), axis=1)
    rw = linalg.row_weight(obj.coeffs.T)[1]
    bound = ell * Fraction(Eplus + 1, Eplus - E + 1)
    return BallCount(int(np.sum(w <= E)), rw, bool(np.all(w <= Eplus)), bound, rw > Eplus, ell * bound_B(E, Eplus))


# syndrome lines


@dataclass
class SyndromeLine:
    s0: np.ndarray
    s1: np.ndarray
    dim_flag: int
    key: tuple = None  # (key of s0, key of s1) for canonical lines

    @property
    def object_id(self):
        return f"L{self.key[0]}:{self.key[1]}" if self.key else None

    def as_object(self, F):
        return AffineObject(F, "line", np.vstack([self.s0, self.s1]))


def syndrome_line(F, s0, s1):
    s0 = np.asarray(s0, dtype=np.int64)
    s1 = np.asarray(s1, dtype=np.int64)
    return SyndromeLine(s0, s1, linalg.rank(F, np.vstack([s0, s1])))


def canonical_line(F, s0, s1):
    """Canonical representative of the point set {s0 + a s1}: smallest point, smallest direction."""
    s0 = np.asarray(s0, dtype=np.int64)
    s1 = np.asarray(s1, dtype=np.int64)
    if not np.any(s1):
        return syndrome_line(F, s0, s1)
    q = F.q
    alphas = F.elements()
    pts = F.add(s0[None, :], F.mul(alphas[:, None], s1[None, :]))
    pk = syndrome_keys(q, pts)
    mults = F.mul(alphas[1:, None], s1[None, :])
    mk = syndrome_keys(q, mults)
    i, j = int(np.argmin(pk)), int(np.argmin(mk))
    L = syndrome_line(F, pts[i], mults[j])
    L.key = (int(pk[i]), int(mk[j]))
    return L


def _canonical_directions(F, r):
    """One representative (smallest key among nonzero multiples) per 1-dim subspace."""
    q = F.q
    vecs = np.vstack(list(all_words(r, q)))[1:]
    keys = syndrome_keys(q, vecs)
    out = []
    alphas = F.elements()[1:]
    for v, k in zip(vecs, keys):
        mk = syndrome_keys(q, F.mul(alphas[:, None], v[None, :]))
        if mk.min() == k:
            out.append(v)
    return np.array(out, dtype=np.int64)


def line_count_closed_form(q, r):
    return q**r * (q**r - 1) // (q * (q - 1))


def syndrome_line_table(r, F, filter_points=None, budget=DEFAULT_CAP):
    """Arrays (S0, S1) of canonical lines, sorted by (key s0, key s1).

    Without a filter every affine line of F_q^r appears once; with a filter
    only lines through at least two filter points appear.
    """
    q = F.q
    alphas = F.elements()
    if filter_points is None:
        cost = line_count_closed_form(q, r) * q
        if cost > budget:
            raise BudgetExceeded(cost, budget, "enumerate_syndrome_lines")
        P = np.vstack(list(all_words(r, q)))
        S0, S1 = [], []
        for d in _canonical_directions(F, r):
            shifted = F.add(P[:, None, :], F.mul(alphas[None, :, None], d[None, None, :]))
            reps = syndrome_keys(q, shifted).min(axis=1)
            for key in np.unique(reps):
                S0.append(key)
                S1.append(d)
        powers = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
        S0 = (np.array(S0, dtype=np.int64)[:, None] // powers[None, :]) % q
        S1 = np.array(S1, dtype=np.int64).reshape(-1, r)
    else:
        P = np.asarray(filter_points, dtype=np.int64).reshape(-1, r)
        npairs = len(P) * (len(P) - 1) // 2
        if npairs * q > budget:
            raise BudgetExceeded(npairs * q, budget, "enumerate_syndrome_lines[filter]")
        if npairs == 0:
            return np.zeros((0, r), dtype=np.int64), np.zeros((0, r), dtype=np.int64)
        I, J = np.triu_indices(len(P), 1)
        S0, S1 = _canonicalize_many(F, P[I], F.sub(P[J], P[I]))
    k0 = syndrome_keys(q, S0)
    k1 = syndrome_keys(q, S1)
    pairs = np.unique(np.stack([k0, k1], axis=1), axis=0, return_index=True)[1]
    S0, S1, k0, k1 = S0[pairs], S1[pairs], k0[pairs], k1[pairs]
    order = np.lexsort((k1, k0))
    return S0[order], S1[order]


def _canonicalize_many(F, A, D, chunk=20000):
    """Canonical (s0, s1) for each row pair (a, d), d != 0."""
    q = F.q
    alphas = F.elements()
    out0, out1 = [], []
    for st in range(0, len(A), chunk):
        a, d = A[st : st + chunk], D[st : st + chunk]
        pts = F.add(a[:, None, :], F.mul(alphas[None, :, None], d[:, None, :]))
        pk = syndrome_keys(q, pts)
        out0.append(pts[np.arange(len(a)), pk.argmin(axis=1)])
        mults = F.mul(alphas[None, 1:, None], d[:, None, :])
        mk = syndrome_keys(q, mults)
        out1.append(mults[np.arange(len(a)), mk.argmin(axis=1)])
    return np.vstack(out0), np.vstack(out1)


def enumerate_syndrome_lines(r, F, filter_points=None, budget=DEFAULT_CAP):
    """Stream of canonical SyndromeLine objects (see syndrome_line_table)."""
    S0, S1 = syndrome_line_table(r, F, filter_points, budget)
    q = F.q
    k0, k1 = syndrome_keys(q, S0), syndrome_keys(q, S1)
    for s0, s1, a, b in zip(S0, S1, k0, k1):
        yield SyndromeLine(s0, s1, linalg.rank(F, np.vstack([s0, s1])), (int(a), int(b)))


def line_points(F, S0, S1):
    """Points of many lines: array (N, q, r)."""
    alphas = F.elements()
    return F.add(S0[:, None, :], F.mul(alphas[None, :, None], S1[:, None, :]))


# degenerate-line classification


@dataclass
class LineClass:
    degenerate: bool
    dim_flag: int
    count: int
    allowed: tuple  # counts possible on a degenerate line (0, 1 or q), or () when nondegenerate

    @property
    def consistent(self):
        return (not self.degenerate) or self.count in self.allowed


def classify_line(F, L, ball):
    """Count |L cap H_E| over the distinct points of L; degenerate lines must give 0, 1 or q."""
    pts = AffineObject(F, "line", np.vstack([L.s0, L.s1])).distinct_points()[1]
    count = int(np.sum(ball.contains(pts)))
    if L.dim_flag <= 1:
        return LineClass(True, L.dim_flag, count, (0, 1, F.q))
    return LineClass(False, L.dim_flag, count, ())


# affine subspaces of F_q^r


def linear_subspace_bases(F, r, dim):
    """Every dim-dimensional subspace of F_q^r, as its unique RREF basis."""
    q = F.q
    for piv in combinations(range(r), dim):
        slots = [(i, c) for i in range(dim) for c in range(piv[i] + 1, r) if c not in piv]
        for vals in product(range(q), repeat=len(slots)):
            B = np.zeros((dim, r), dtype=np.int64)
            for i, c in enumerate(piv):
                B[i, c] = 1
            for (i, c), v in zip(slots, vals):
                B[i, c] = v
            yield B


def affine_subspaces(F, r, dim, budget=DEFAULT_CAP):
    """Every affine subspace of dimension dim as (base, directions) with base the smallest-key point."""
    q = F.q
    P = np.vstack(list(all_words(r, q)))
    coeff = np.vstack(list(all_words(dim, q))) if dim else np.zeros((1, 0), dtype=np.int64)
    for B in linear_subspace_bases(F, r, dim):
        V = F.matmul(coeff, B) if dim else np.zeros((1, r), dtype=np.int64)
        cost = len(P) * len(V)
        if cost > budget:
            raise BudgetExceeded(cost, budget, "affine_subspaces")
        reps = syndrome_keys(q, F.add(P[:, None, :], V[None, :, :])).min(axis=1)
        for key in np.unique(reps):
            base = (int(key) // q ** np.arange(r - 1, -1, -1, dtype=np.int64)) % q
            yield base, B
