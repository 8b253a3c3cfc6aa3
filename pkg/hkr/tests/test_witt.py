import numpy as np
from numpy.testing import assert_raises

from hkr.exceptions import LengthCapExceeded, LengthMismatch, IndexOutOfRange
from hkr.ring import ModPrimePower, SeriesRing
from hkr import witt


def test_ghost_polynomial():
    phi = witt.ghost_polynomial(2, 1)
    T0, T1 = phi.ring.gen('T_0'), phi.ring.gen('T_1')
    assert phi == T0 ** 2 + 2 * T1
    phi = witt.ghost_polynomial(3, 2)
    T = [phi.ring.gen('T_{}'.format(i)) for i in range(3)]
    assert phi == T[0] ** 9 + 3 * T[1] ** 3 + 9 * T[2]


def test_first_sum_polynomial():
    sys = witt.build_system(2, 2)
    X0, X1, Y0, Y1 = [sys.xy_ring.gen(n)
                      for n in ('X_0', 'X_1', 'Y_0', 'Y_1')]
    assert sys.sum_polys[0] == X0 + Y0
    assert sys.sum_polys[1] == X1 + Y1 - X0 * Y0
    assert sys.product_polys[1] == (X0 ** 2 * Y1 + X1 * Y0 ** 2 +
                                    2 * X1 * Y1)


def test_frobenius_first():
    sys = witt.build_system(3, 2)
    T0, T1 = sys.t_ring.gen('T_0'), sys.t_ring.gen('T_1')
    assert sys.frobenius_polys[0] == T0 ** 3 + 3 * T1


def test_ghost_identities():
    for p, n in [(2, 3), (3, 3), (5, 2)]:
        sys = witt.build_system(p, n)
        for i in range(n):
            assert sys.sum_ghost_identity(i)
            assert sys.product_ghost_identity(i)
            assert sys.frobenius_ghost_identity(i)
            assert sys.frobenius_congruence(i)
        assert sys.is_integral()


def test_length_cap():
    assert_raises(LengthCapExceeded, witt.build_system, 5, 3)
    assert_raises(LengthCapExceeded, witt.build_system, 2, 5)


def test_sekiguchi_suwa_closed_forms():
    G = witt.sekiguchi_suwa_G(2, 0, 2)
    assert G == G.ring.gen('T_1')
    G = witt.sekiguchi_suwa_G(2, 1, 2)
    T0, T1, T2 = [G.ring.gen('T_{}'.format(i)) for i in range(3)]
    assert G == T2 - T0 ** 2 * T1 - T1 ** 2
    G = witt.sekiguchi_suwa_G(3, 1, 2)
    T0, T1, T2 = [G.ring.gen('T_{}'.format(i)) for i in range(3)]
    assert G == T2 - T0 ** 6 * T1 - 3 * T0 ** 3 * T1 ** 2 - 3 * T1 ** 3


def test_sekiguchi_suwa_recursion():
    for p, n in [(2, 3), (3, 3), (5, 2)]:
        for i in range(n):
            assert witt.recursion_holds_mod_p(p, i, n)
            assert witt.exact_recursion_holds(p, i, n)
            assert witt.differential_at_origin_holds(p, i, n)
    assert witt.recursion_holds_exactly(2, 0, 2)
    assert witt.recursion_holds_exactly(2, 1, 2)
    # the C(4, 2) term survives for p = 2, i = 2
    assert not witt.recursion_holds_exactly(2, 2, 3)
    assert not witt.recursion_holds_exactly(3, 1, 2)


def test_sekiguchi_suwa_index():
    assert_raises(IndexOutOfRange, witt.sekiguchi_suwa_G, 2, 2, 2)


def test_exact_recursion_coefficient():
    assert witt.exact_recursion_coefficient(2, 1, 1) == 1
    assert witt.exact_recursion_coefficient(2, 1, 2) == 1
    assert witt.exact_recursion_coefficient(3, 1, 2) == 3
    assert witt.exact_recursion_coefficient(2, 2, 2) == 3


def test_add_mul_concrete():
    sys = witt.build_system(2, 2)
    # W_2(F_2) = Z/4: (1, 0) + (1, 0) = (0, 1)
    one = witt.WittVector(2, (ModPrimePower(1, 2), ModPrimePower(0, 2)))
    two = witt.witt_add(sys, one, one)
    assert two == witt.WittVector(2, (ModPrimePower(0, 2),
                                      ModPrimePower(1, 2)))
    four = witt.witt_add(sys, two, two)
    assert four.is_zero()


def test_negation():
    rng = np.random.RandomState(0)
    sys = witt.build_system(3, 3)
    for _ in range(10):
        x = witt.random_vector(3, 3, 2, rng)
        assert witt.witt_add(sys, x, witt.witt_neg(sys, x)).is_zero()


def test_frobenius_verschiebung():
    rng = np.random.RandomState(1)
    for p, n in [(2, 3), (3, 2), (5, 2)]:
        sys = witt.build_system(p, n)
        for _ in range(10):
            x = witt.random_vector(p, n, 2, rng)
            lhs = witt.frobenius(sys, witt.verschiebung(x))
            rhs = witt.witt_multiple(sys, x, p).truncate(n - 1)
            assert lhs == rhs


def test_frobenius_symbolic():
    # F on the generic vector is the list of Frobenius polynomials
    sys = witt.build_system(2, 2)
    T = witt.symbolic_vector(2, 3, 'T', sys.t_ring)
    FT = witt.frobenius(sys, T)
    assert FT.coordinates == sys.frobenius_polys


def test_teichmuller():
    rng = np.random.RandomState(2)
    sys = witt.build_system(3, 3)
    for _ in range(10):
        x = witt.random_vector(3, 3, 2, rng)
        a = ModPrimePower(int(rng.randint(0, 9)), 3, 2)
        acted = witt.teichmuller_action(a, x)
        assert witt.witt_mul(sys, witt.teichmuller(a, 3, 3), x) == acted
        g = witt.ghost_components(x)
        assert witt.ghost_components(acted) == tuple(
            a ** (3 ** i) * g[i] for i in range(3))


def test_length_mismatch():
    sys = witt.build_system(2, 3)
    x = witt.WittVector(2, (1, 0))
    assert_raises(LengthMismatch, witt.witt_add, sys, x, x)


def test_symbolic_sum():
    ring = SeriesRing(witt.witt_variables(2, 'X', 2) +
                      witt.witt_variables(2, 'Y', 2))
    sys = witt.build_system(2, 2)
    X = witt.symbolic_vector(2, 2, 'X', ring)
    Y = witt.symbolic_vector(2, 2, 'Y', ring)
    S = witt.witt_add(sys, X, Y)
    assert S[1] == sys.sum_polys[1].coerce(ring)
