from math import factorial

import numpy as np
from numpy.testing import assert_array_equal, assert_raises

from hkr.exceptions import ArityTooLarge, NotADerivation
from hkr import liealg


def test_w_is_norm():
    for p in (2, 3, 5):
        assert liealg.lie_to_assoc(liealg.w_element(p)) == \
            liealg.norm_element(p)


def test_w_two():
    # p = 2: w = [X1, X2] = X1 X2 - X2 X1, while N = X1 X2 + X2 X1
    e = liealg.lie_to_assoc(liealg.w_element(2))
    assert e.coefficients == {(1, 2): 1, (2, 1): 1}


def test_lie_words_independent():
    for p in (2, 3, 5):
        assert liealg.lie_to_assoc_rank(p) == factorial(p - 1)


def test_arity_cap():
    assert_raises(ArityTooLarge, liealg.w_element, 7)


def test_jacobson():
    L = liealg.jacobson_L(2)
    assert L.terms == {('y', 'x'): 1}
    for p in (3, 5):
        L = liealg.jacobson_L(p)
        assert L.to_assoc() == dict((w, 1) for w in liealg.mixed_words(p))


def test_jacobson_matrices():
    rng = np.random.RandomState(4)
    for p in (2, 3):
        L = liealg.jacobson_L(p)
        for _ in range(10):
            x = liealg.random_lie_element(3, p, rng)
            y = liealg.random_lie_element(3, p, rng)
            lhs = (x + y).pth_power()
            rhs = x.pth_power() + y.pth_power() + liealg.MatrixLieElement(
                L.evaluate(x.matrix, y.matrix), p)
            assert lhs == rhs


def test_restricted_checks():
    rng = np.random.RandomState(5)
    for n, p in [(1, 2), (2, 3), (3, 2), (2, 5)]:
        report = liealg.restricted_checks(n, p, 30, rng)
        assert report.passed, report.todict()
        assert report.trials == 30
    for n, p in [(2, 2), (3, 3), (2, 5)]:
        report = liealg.restricted_checks(n, p, 100, rng)
        assert report.passed, report.todict()
        assert report.trials == 100


def test_adjoint():
    x = liealg.MatrixLieElement(liealg.elementary(2, 0, 1), 3)
    y = liealg.MatrixLieElement(liealg.elementary(2, 1, 0), 3)
    h = x.bracket(y)
    assert_array_equal(h.matrix, [[1, 0], [0, 2]])
    assert x.pth_power() == x * 0


def test_gamma_p():
    rng = np.random.RandomState(6)
    for n, p in [(2, 2), (2, 3)]:
        report = liealg.gamma_p_verschiebung_checks(n, p, 20, rng)
        assert report.passed, report.todict()


def test_derivations():
    for p in (2, 3, 5):
        euler = liealg.euler_derivation(p, 2 * p + 1)
        assert liealg.derivation_pth_power(euler) == euler
        D = liealg.d_dx(p, 2 * p)
        assert liealg.derivation_pth_power(D) == \
            liealg.TruncatedDerivation(p, 2 * p, [0])


def test_not_a_derivation():
    # d/dx does not preserve (x^N) unless p divides N
    assert_raises(NotADerivation, liealg.d_dx, 3, 4)


def test_leibniz():
    rng = np.random.RandomState(7)
    M = liealg.euler_derivation(5, 8).matrix()
    for _ in range(10):
        f, g = rng.randint(0, 5, size=8), rng.randint(0, 5, size=8)
        assert liealg.leibniz_holds(M, f, g, 5)
    bad = np.zeros((8, 8), dtype=np.int64)
    bad[0, 0] = 1
    assert not liealg.leibniz_holds(bad, np.eye(8, dtype=np.int64)[0],
                                    np.eye(8, dtype=np.int64)[0], 5)
