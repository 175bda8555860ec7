import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_rank
from syndgap import linalg
from syndgap.errors import NotExpressible, NotInRowSpace
from syndgap.field import field_make


def test_weight_support():
    assert linalg.weight_support([0, 0, 0]) == ((), 0)
    assert linalg.weight_support([1, 0, 2]) == ((0, 2), 2)


def test_row_weight():
    assert linalg.row_weight(np.zeros((3, 2), dtype=int)) == ((), 0)
    X = np.array([[1, 0], [0, 0], [0, 2]])  # columns (1,0,0) and (0,0,2)
    assert linalg.row_weight(X) == ((0, 2), 2)


def test_rank_small_cases():
    F = field_make(3)
    assert linalg.rank(F, np.eye(3, dtype=int)) == 3
    assert linalg.rank(F, [[1, 2, 0], [1, 2, 0], [0, 0, 0]]) == 1


matrices = st.tuples(st.sampled_from([2, 3, 4, 5, 8, 9]), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_minor_oracle(params):
    q, rows, cols, seed = params
    F = field_make(q)
    rng = np.random.default_rng(seed)
    A = F.random((rows, cols), rng)
    A[rng.random(rows) < 0.3] = 0
    assert linalg.rank(F, A) == brute_rank(F, A)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_bounded_by_row_weight(params):
    q, n, K, seed = params
    F = field_make(q)
    X = F.random((n, K), np.random.default_rng(seed))
    assert linalg.rank(F, X) <= linalg.row_weight(X)[1]
    assert linalg.row_weight(X)[1] <= sum(linalg.weight(X[:, j]) for j in range(K))


def test_row_space_tools_examples(rng):
    F = field_make(5)
    I = np.eye(4, dtype=int)
    basis, completion = linalg.row_space_tools(F, I, [I[0]])
    assert len(basis) == 1 and np.array_equal(basis[0], I[0])
    assert len(completion) == 3
    basis, completion = linalg.row_space_tools(F, I, list(I))
    assert completion == []
    for _ in range(20):
        X = F.random((4, 6), rng)
        X[3] = F.add(X[0], X[1])
        given_rows = [F.add(X[0], F.mul(2, X[2]))]
        basis, completion = linalg.row_space_tools(F, X, given_rows)
        assert len(basis) + len(completion) == linalg.rank(F, X)
        assert linalg.rank(F, np.vstack(basis + completion)) == linalg.rank(F, X)


def test_row_space_tools_rejects_outside_vector():
    F = field_make(3)
    with pytest.raises(NotInRowSpace):
        linalg.row_space_tools(F, [[1, 0, 0]], [[0, 1, 0]])


def test_express_in_row_basis(rng):
    F = field_make(7)
    X = F.random((5, 4), rng)
    assert np.array_equal(linalg.express_in_row_basis(F, X, np.eye(4, dtype=int)), X)
    for _ in range(20):
        W = F.random((3, 6), rng)
        if linalg.rank(F, W) < 3:
            continue
        M0 = F.random((4, 3), rng)
        assert np.array_equal(linalg.express_in_row_basis(F, F.matmul(M0, W), W), M0)
    with pytest.raises(NotExpressible):
        linalg.express_in_row_basis(F, [[0, 0, 1]], [[1, 0, 0], [0, 1, 0]])


def test_solve_linear_examples():
    F = field_make(2)
    b = np.array([1, 0, 1])
    assert np.array_equal(linalg.solve_linear(F, np.eye(3, dtype=int), b), b)
    assert not np.any(linalg.solve_linear(F, [[1, 1], [0, 1]], [0, 0]))
    assert linalg.solve_linear(F, [[1, 0], [1, 0]], [1, 0]) is None


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_solve_and_nullspace(params):
    q, rows, cols, seed = params
    F = field_make(q)
    rng = np.random.default_rng(seed)
    A = F.random((rows, cols), rng)
    x0 = F.random(cols, rng)
    b = F.matmul(A, x0)
    x = linalg.solve_linear(F, A, b)
    assert x is not None and np.array_equal(F.matmul(A, x), b)
    N = linalg.nullspace(F, A)
    assert N.shape[0] + linalg.rank(F, A) == cols
    assert not np.any(F.matmul(A, N.T))
    # solvability agrees with the rank criterion for a random right-hand side
    c = F.random(rows, rng)
    solvable = linalg.rank(F, np.hstack([A, c[:, None]])) == linalg.rank(F, A)
    assert (linalg.solve_linear(F, A, c) is not None) == solvable
