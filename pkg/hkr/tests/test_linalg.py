import numpy as np
from numpy.testing import assert_array_equal, assert_raises

from hkr import linalg


def test_rank_and_nullspace():
    rng = np.random.RandomState(0)
    for p in (2, 3, 5):
        for _ in range(20):
            A = linalg.random_matrix(3, 5, p, rng)
            N = linalg.nullspace(A, p)
            assert linalg.rank(A, p) + N.shape[1] == 5
            assert linalg.is_zero(linalg.matmul(A, N, p), p)


def test_solve():
    A = np.array([[1, 1], [0, 1]])
    x = linalg.solve(A, [2, 1], 3)
    assert_array_equal(x, [1, 1])
    assert linalg.solve(np.array([[1], [1]]), [0, 1], 2) is None


def test_inverse():
    rng = np.random.RandomState(1)
    g = linalg.random_unitriangular(4, 5, rng)
    assert_array_equal(linalg.matmul(g, linalg.inverse(g, 5), 5),
                       linalg.identity(4))
    assert_raises(ZeroDivisionError, linalg.inverse, np.array([[1, 1],
                                                               [1, 1]]), 3)


def test_intersection_and_complement():
    U = np.array([[1, 0], [0, 1], [0, 0]])
    W = np.array([[0, 0], [1, 0], [0, 1]])
    I = linalg.intersection(U, W, 3)
    assert I.shape[1] == 1
    assert linalg.in_span(I, [0, 1, 0], 3)
    C = linalg.complement_basis(W, U, 3)
    assert C.shape[1] == 1
    assert not linalg.in_span(U, C[:, 0], 3)


def test_smith_invariants():
    # multiplication by p on Z/p^2
    A = np.array([[3]])
    assert linalg.kernel_invariants(A, 3, 2) == [1]
    assert linalg.cokernel_invariants(A, 3, 2) == [1]
    Z = np.zeros((2, 2), dtype=np.int64)
    assert linalg.kernel_invariants(Z, 2, 2) == [2, 2]
    A = np.array([[1, 2], [0, 4]])
    assert linalg.kernel_invariants(A, 2, 3) == [2]
    assert linalg.cokernel_invariants(A, 2, 3) == [2]


def test_unitriangular_allowed():
    rng = np.random.RandomState(2)
    g = linalg.random_unitriangular(4, 7, rng, allowed=lambda i, j: j == i + 1)
    assert not np.any(np.triu(g, 2))
    assert_array_equal(np.diag(g), [1, 1, 1, 1])


def test_matpow():
    A = np.array([[1, 1], [0, 1]])
    assert_array_equal(linalg.matpow(A, 5, 5), linalg.identity(2))
