"""Random linear codes given by parity-check matrices."""
import threading
from functools import total_ordering
from math import comb

import numpy as np

from . import linalg
from .errors import BudgetExceeded, DimensionMismatch, TableTooLarge
from .field import field_make
from .hamming import all_words, ball_volume, words_of_weight
from .rng import make_rng

DEFAULT_CAP = 5 * 10**6


@total_ordering
class _Infinity:
    """Distance of the zero code.  Compares above every integer and is not a number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("inf-distance")

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def syndrome_keys(q, S):
    """Integer keys for syndromes (rows of S), big-endian base q so key order is lexicographic."""
    S = np.asarray(S, dtype=np.int64)
    r = S.shape[-1]
    if q**r >= 2**63:
        raise ValueError("syndrome space too large for integer keys")
    powers = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return S @ powers


def key_to_vector(q, r, key):
    powers = q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    return (int(key) // powers) % q


class LinearCode:
    """C = ker H for a parity-check matrix H (r x n)."""

    def __init__(self, F, H, seed=None):
        H = np.array(H, dtype=np.int64)
        if H.ndim != 2:
            raise DimensionMismatch("H must be a matrix")
        self.F = F
        self.H = H
        self.H.setflags(write=False)
        self.r, self.n = H.shape
        self.seed = seed
        self.rank_h = linalg.rank(F, H)
        self.kernel_basis = linalg.nullspace(F, H)
        self.k = self.kernel_basis.shape[0]
        self._distance = None
        self._lock = threading.Lock()

    @property
    def q(self):
        return self.F.q

    @property
    def cached_distance(self):
        return self._distance

    def syndrome(self, y):
        y = np.asarray(y, dtype=np.int64)
        if y.shape[-1] != self.n:
            raise DimensionMismatch(f"word length {y.shape[-1]} != n={self.n}")
        return self.F.matmul(self.H, y)

    def syndromes(self, Y):
        """Syndromes of the rows of Y."""
        Y = np.asarray(Y, dtype=np.int64)
        if Y.shape[-1] != self.n:
            raise DimensionMismatch(f"word length {Y.shape[-1]} != n={self.n}")
        return self.F.matmul(Y, self.H.T)

    def is_codeword(self, c):
        return not np.any(self.syndrome(c))

    def codewords(self, chunk=1 << 15):
        """All q^k codewords, in chunks (coefficient vectors in lexicographic order)."""
        if self.k == 0:
            yield np.zeros((1, self.n), dtype=np.int64)
            return
        for coeffs in all_words(self.k, self.q, chunk):
            yield self.F.matmul(coeffs, self.kernel_basis)

    def min_distance(self, cap=DEFAULT_CAP, strategy=None):
        if self._distance is None:
            d = min_distance(self, cap, strategy)
            with self._lock:
                if self._distance is None:
                    self._distance = d
        return self._distance

    def to_json(self):
        return {"q": self.q, "n": self.n, "r": self.r, "H": self.H.ravel().tolist(), "seed": self.seed}

    @classmethod
    def from_json(cls, data):
        F = field_make(data["q"])
        H = np.array(data["H"], dtype=np.int64).reshape(data["r"], data["n"])
        return cls(F, H, data.get("seed"))


def sample_code(n, r, F, seed):
    """Uniformly random H in F_q^{r x n}, reproducible from the seed."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    rng = make_rng(seed)
    H = rng.integers(0, F.q, size=(r, n), dtype=np.int64)
    return LinearCode(F, H, seed)


def syndrome(C, y):
    return C.syndrome(y)


def _enum_cost(C):
    return C.q**C.k


def _radius_cost(n, w):
    return sum(comb(n, i) for i in range(w + 1))


def min_distance(C, cap=DEFAULT_CAP, strategy=None):
    """Exact minimum distance, or INF for the zero code.

    'enumerate' scans all codewords; 'radius' grows the weight w and asks
    whether some w columns of H are dependent (a codeword of weight <= w).
    """
    if C.k == 0:
        return INF
    costs = {"enumerate": _enum_cost(C), "radius": _radius_cost(C.n, C.n - C.k + 1)}
    if strategy is None:
        strategy = min(costs, key=costs.get)
    if costs[strategy] > cap:
        raise BudgetExceeded(costs[strategy], cap, f"min_distance[{strategy}]")
    if strategy == "enumerate":
        best = C.n + 1
        for block in C.codewords():
            w = np.count_nonzero(block, axis=1)
            w = w[w > 0]
            if w.size:
                best = min(best, int(w.min()))
        return best
    from itertools import combinations

    for w in range(1, C.n + 1):
        for T in combinations(range(C.n), w):
            if linalg.rank(C.F, C.H[:, T]) < w:
                return w
    return INF


def low_weight_codewords(C, max_weight, limit=None):
    """Nonzero codewords of weight <= max_weight, up to scalar multiples, sorted by weight.

    Found support by support: for each support T the kernel of H_T is scanned.
    """
    from itertools import combinations

    F = C.F
    found = []
    seen = set()
    for w in range(1, max_weight + 1):
        for T in combinations(range(C.n), w):
            ker = linalg.nullspace(F, C.H[:, T])
            if ker.shape[0] == 0:
                continue
            for coeffs in all_words(ker.shape[0], F.q):
                z = F.matmul(coeffs, ker)
                for zz in z:
                    if np.count_nonzero(zz) != w:
                        continue
                    # normalise so the first nonzero entry is 1
                    zz = F.mul(zz, F.inv(zz[np.flatnonzero(zz)[0]]))
                    c = np.zeros(C.n, dtype=np.int64)
                    c[list(T)] = zz
                    key = tuple(c.tolist())
                    if key not in seen:
                        seen.add(key)
                        found.append(c)
                        if limit is not None and len(found) >= limit:
                            return found
    return found


def _lex_smallest(rows):
    order = np.lexsort(rows.T[::-1])
    return rows[order[0]]


def distance_to_code(C, y, cap=DEFAULT_CAP, strategy=None):
    """(d(y, C), nearest codeword), ties broken by the lexicographically smallest codeword."""
    F = C.F
    y = np.asarray(y, dtype=np.int64)
    if y.shape[-1] != C.n:
        raise DimensionMismatch("length mismatch")
    costs = {"enumerate": _enum_cost(C), "ball": ball_volume(C.n, C.q, C.n - C.k)}
    if strategy is None:
        strategy = min(costs, key=costs.get)
    if costs[strategy] > cap:
        raise BudgetExceeded(costs[strategy], cap, f"distance_to_code[{strategy}]")
    if strategy == "enumerate":
        best_w, best = C.n + 1, None
        for block in C.codewords():
            w = np.count_nonzero(F.sub(y[None, :], block), axis=1)
            m = int(w.min())
            cand = _lex_smallest(block[w == m])
            if m < best_w or (m == best_w and tuple(cand) < tuple(best)):
                best_w, best = m, cand
        return best_w, best
    s = C.syndrome(y)
    for w in range(C.n + 1):
        hits = []
        for block in words_of_weight(C.n, C.q, w):
            match = np.all(C.syndromes(block) == s[None, :], axis=1)
            if match.any():
                hits.append(F.sub(y[None, :], block[match]))
        if hits:
            return w, _lex_smallest(np.vstack(hits))
    raise AssertionError("unreachable: the coset always has a member")


def count_codewords_in_ball(C, y, E, cap=DEFAULT_CAP, strategy=None):
    """|{c in C : d(y, c) <= E}|."""
    F = C.F
    y = np.asarray(y, dtype=np.int64)
    costs = {"enumerate": _enum_cost(C), "ball": ball_volume(C.n, C.q, min(E, C.n))}
    if strategy is None:
        strategy = min(costs, key=costs.get)
    if costs[strategy] > cap:
        raise BudgetExceeded(costs[strategy], cap, f"count_codewords_in_ball[{strategy}]")
    if strategy == "enumerate":
        total = 0
        for block in C.codewords():
            total += int(np.sum(np.count_nonzero(F.sub(y[None, :], block), axis=1) <= E))
        return total
    s = C.syndrome(y)
    total = 0
    for w in range(min(E, C.n) + 1):
        for block in words_of_weight(C.n, C.q, w):
            total += int(np.sum(np.all(C.syndromes(block) == s[None, :], axis=1)))
    return total


def uniform_image_test(F, X, r, samples, seed):
    """Counts of HX over uniformly random H, indexed by the big-endian key of HX."""
    X = np.asarray(X, dtype=np.int64)
    if X.ndim == 1:
        X = X[:, None]
    n, t = X.shape
    outcomes = F.q ** (r * t)
    if outcomes > 10**4:
        raise TableTooLarge(f"q^(rt) = {outcomes} > 10^4")
    counts = np.zeros(outcomes, dtype=np.int64)
    if t == 0:
        counts[0] = samples
        return counts
    rng = make_rng(seed)
    powers = F.q ** np.arange(r * t - 1, -1, -1, dtype=np.int64)
    batch = 4096
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        Hs = rng.integers(0, F.q, size=(b, r, n), dtype=np.int64)
        Y = F.matmul(Hs.reshape(b * r, n), X).reshape(b, r * t)
        np.add.at(counts, Y @ powers, 1)
        done += b
    return counts
