"""Exact linear algebra over GF(q) on dense integer arrays.

Vectors are 1-d int64 arrays, matrices 2-d.  Witness-style matrices keep
their vectors as columns (shape n x K), so row_weight looks at rows.
Indices are 0-based throughout.
"""
import numpy as np

from .errors import NotExpressible, NotInRowSpace


def as_array(a):
    return np.asarray(a, dtype=np.int64)


def weight_support(x):
    """(support indices, weight) of a vector."""
    supp = tuple(int(i) for i in np.flatnonzero(as_array(x)))
    return supp, len(supp)


def weight(x):
    return int(np.count_nonzero(as_array(x)))


def row_weight(X):
    """Row support and row weight of a matrix whose columns are words of length n."""
    X = as_array(X)
    if X.ndim == 1:
        X = X[:, None]
    if X.size == 0:
        return (), 0
    rows = tuple(int(i) for i in np.flatnonzero(np.any(X != 0, axis=1)))
    return rows, len(rows)


def rref(F, A):
    """Reduced row echelon form; pivots taken from the lowest-index available row."""
    R = as_array(A).copy()
    if R.ndim == 1:
        R = R[None, :]
    nrows, ncols = R.shape
    pivots = []
    row = 0
    for c in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(R[row:, c])
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        R[row] = F.mul(R[row], F.inv(R[row, c]))
        factors = R[:, c].copy()
        factors[row] = 0
        mask = factors != 0
        if mask.any():
            R[mask] = F.sub(R[mask], F.mul(factors[mask][:, None], R[row][None, :]))
        pivots.append(c)
        row += 1
    return R, pivots


def rank(F, A):
    A = as_array(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def solve_linear(F, A, b):
    """One solution of A x = b with free variables set to 0, or None."""
    A = as_array(A)
    b = as_array(b)
    if A.ndim == 1:
        A = A[None, :]
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.zeros(ncols, dtype=np.int64)
    R, pivots = rref(F, np.hstack([A, b[:, None]]))
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, -1]
    return x


def nullspace(F, A):
    """Basis of {x : A x = 0} as rows of a matrix."""
    A = as_array(A)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, pivots = rref(F, A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = F.neg(R[i, f])
    return basis


def in_row_space(F, X, v, rank_x=None):
    X = as_array(X)
    if X.shape[0] == 0:
        return not np.any(v)
    rx = rank(F, X) if rank_x is None else rank_x
    return rank(F, np.vstack([X, as_array(v)[None, :]])) == rx


def row_space_tools(F, X, given):
    """Independent subset of `given` plus completion rows of X forming a basis of Row(X)."""
    X = as_array(X)
    given = [as_array(g) for g in given]
    rx = rank(F, X)
    for i, g in enumerate(given):
        if not in_row_space(F, X, g, rx):
            raise NotInRowSpace(i)
    ncols = X.shape[1]
    basis = []
    cur = np.zeros((0, ncols), dtype=np.int64)
    cur_rank = 0
    for g in given:
        trial = np.vstack([cur, g[None, :]])
        if rank(F, trial) > cur_rank:
            cur, cur_rank = trial, cur_rank + 1
            basis.append(g)
    completion = []
    for row in X:
        if cur_rank == rx:
            break
        trial = np.vstack([cur, row[None, :]])
        if rank(F, trial) > cur_rank:
            cur, cur_rank = trial, cur_rank + 1
            completion.append(row.copy())
    return basis, completion


def express_in_row_basis(F, X, W):
    """The unique M with X = M W, for W with independent rows."""
    X = as_array(X)
    W = as_array(W)
    t = W.shape[0]
    if rank(F, W) != t:
        raise ValueError("rows of W are not linearly independent")
    if t == 0:
        if np.any(X):
            raise NotExpressible("nonzero X with empty basis")
        return np.zeros((X.shape[0], 0), dtype=np.int64)
    R, pivots = rref(F, np.hstack([W.T, X.T]))
    if pivots[:t] != list(range(t)) or (len(pivots) > t):
        raise NotExpressible("Row(X) is not contained in Row(W)")
    return R[:t, t:].T.copy()
