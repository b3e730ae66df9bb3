import random

from eqmack import intlinalg as la


def test_snf_identity():
    a = la.identity(3)
    d, u, v = la.snf(a)
    assert d == la.identity(3)
    assert la.matmul(la.matmul(u, a), v) == d


def test_snf_example():
    a = ((2, 4), (6, 8))
    d, u, v = la.snf(a)
    assert la.diagonal(d) == [2, 4]
    assert la.matmul(la.matmul(u, a), v) == d


def test_snf_zero():
    a = la.zeros(2, 3)
    d, u, v = la.snf(a)
    assert la.is_zero(d)


def test_snf_divisibility_and_recomposition():
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randrange(0, 5)
        n = rng.randrange(0, 5)
        a = tuple(
            tuple(rng.randrange(-6, 7) for _ in range(n)) for _ in range(m)
        )
        d, u, v = la.snf(a)
        assert la.matmul(la.matmul(u, a), v) == d
        diag = [x for x in la.diagonal(d) if x]
        for x, y in zip(diag, diag[1:]):
            assert y % x == 0
        # off-diagonal zero
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert d[i][j] == 0
        # unimodularity via integer inverses
        if m:
            assert la.solve_matrix(u, la.identity(m)) is not None
        if n:
            assert la.solve_matrix(v, la.identity(n)) is not None


def test_kernel_and_solve():
    rng = random.Random(11)
    for _ in range(60):
        m = rng.randrange(0, 6)
        n = rng.randrange(0, 6)
        a = tuple(
            tuple(rng.randrange(-4, 5) for _ in range(n)) for _ in range(m)
        )
        k = la.kernel_basis(a)
        ncols = len(k[0]) if k else 0
        for j in range(ncols):
            col = tuple(k[i][j] for i in range(n))
            assert all(x == 0 for x in la.apply(a, col)) or m == 0
        # solve a known-consistent system
        x0 = tuple(rng.randrange(-3, 4) for _ in range(n))
        b = la.apply(a, x0) if m else ()
        x = la.reduction(a, m, n).solve(b)
        assert x is not None
        if m:
            assert la.apply(a, x) == b


def test_solve_detects_inconsistency():
    a = ((2, 0), (0, 2))
    assert la.solve(a, (1, 0)) is None
    assert la.solve(a, (2, -4)) == (1, -2)


def test_kernel_rank_via_random_rect():
    a = ((1, 2, 3), (2, 4, 6))
    k = la.kernel_basis(a)
    assert len(k) == 3 and len(k[0]) == 2
    for j in range(2):
        col = tuple(k[i][j] for i in range(3))
        assert la.apply(a, col) == (0, 0)
