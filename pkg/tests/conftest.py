import numpy as np
import pytest

from syndgap.field import field_make


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def brute_rank(F, A):
    """Rank as the size of the largest nonsingular minor, with determinants by cofactor expansion."""
    from itertools import combinations

    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return 0
    rows, cols = A.shape

    def det(M):
        k = M.shape[0]
        if k == 1:
            return int(M[0, 0])
        total = 0
        for j in range(k):
            minor = np.delete(M[1:], j, axis=1)
            term = F.mul(int(M[0, j]), det(minor))
            total = F.add(total, term) if j % 2 == 0 else F.sub(total, term)
        return int(total)

    for k in range(min(rows, cols), 0, -1):
        for R in combinations(range(rows), k):
            for Cc in combinations(range(cols), k):
                if det(A[np.ix_(R, Cc)]):
                    return k
    return 0


def field(q):
    return field_make(q)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok, seconds, detail = RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({seconds:.1f}s) {detail}")
