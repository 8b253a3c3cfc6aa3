import numpy as np
from numpy.testing import assert_array_equal, assert_raises

from hkr.exceptions import (NotAComplex, RingMismatch, LiftNotCocycle,
                            IndexOutOfRange)
from hkr import gadual
from hkr.gadual import BaseRing, FiniteModule


def all_bases(p):
    return [BaseRing(p, k, e) for k in (1, 2) for e in (1, p)]


def test_trivial_module_cohomology():
    for p in (2, 3):
        for R in all_bases(p):
            h0, h1 = gadual.cohomology_of_rep(gadual.trivial_module(R))
            assert h0 == FiniteModule.free(R)
            assert h1 == FiniteModule.free(R)


def test_tau_module():
    F = BaseRing(3)
    tau = gadual.tau_module(F)
    h0, h1 = gadual.cohomology_of_rep(tau)
    assert h0.length == 1 and h1.length == 1
    assert gadual.connecting_class(tau) == 1
    h0, h1 = gadual.cohomology_of_rep(gadual.tau_module(BaseRing(3, 2)))
    assert h0.invariants == (2,) and h1.invariants == (2,)


def test_tensor_theta():
    for p, index in [(2, 2), (3, 3), (5, 3)]:
        tau = gadual.tau_module(BaseRing(p))
        T = gadual.tensor(tau, tau)
        assert T.rank == 4
        assert T.nilpotency_index() == index


def test_tensor_ring_mismatch():
    assert_raises(RingMismatch, gadual.tensor,
                  gadual.tau_module(BaseRing(2)),
                  gadual.tau_module(BaseRing(3)))


def test_not_nilpotent():
    F = BaseRing(3)
    assert_raises(NotAComplex, gadual.ThetaModule, F, F.identity(1))


def test_not_a_complex():
    F = BaseRing(2)
    one = F.constant([[1]])
    assert_raises(NotAComplex, gadual.ThetaComplex, F,
                  {0: 1, 1: 1, 2: 1}, {0: one, 1: one})


def test_colie_complex():
    # p = 2, n = 3: D(dS_0) = 2 dT_1 - lam dT_0
    C = gadual.colie_complex(2, 3)
    D = C.differential(-1)
    assert D[0, 1, 0] == 2
    assert D[1, 0, 0] == 3
    assert_array_equal(D[:, :, 2], 0)
    for p, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        assert_array_equal(gadual.colie_complex(p, n).differential(-1),
                           gadual.expected_colie_differential(p, n))


def test_colie_vanishes_mod_p_lambda():
    C = gadual.colie_complex(3, 3).at_lambda_zero().reduce_mod_p()
    assert not C.differential(-1).any()


def test_colie_bockstein():
    for p, n in [(2, 2), (2, 3), (3, 2)]:
        assert gadual.colie_bockstein_holds(p, n)


def test_bockstein_basics():
    R = BaseRing(2, 2)
    C = gadual.ThetaComplex(R, {0: 1, 1: 1}, {0: R.constant([[2]])})
    assert_array_equal(gadual.bockstein(C, np.array([[1]]), 0), [[1]])
    C = gadual.ThetaComplex(R, {0: 1, 1: 1}, {0: R.constant([[1]])})
    assert_raises(LiftNotCocycle, gadual.bockstein, C, np.array([[1]]), 0)
    assert_raises(RingMismatch, gadual.bockstein,
                  C.reduce_mod_p(), np.array([[1]]), 0)


def test_tau_bockstein_zero():
    for p in (2, 3):
        tau = gadual.tau_class(BaseRing(p, 2))
        assert not gadual.bockstein(tau.complex, tau.representative,
                                    1).any()
        assert not tau.is_zero()


def test_bockstein_lift_independent():
    rng = np.random.RandomState(0)
    R = BaseRing(3, 2)
    for _ in range(20):
        C = gadual.random_two_term(R, rng)
        z = gadual.random_cocycle(C, 0, rng)
        assert gadual.bockstein_lift_independent(C, z, 0, rng)


def test_bockstein_leibniz():
    rng = np.random.RandomState(1)
    for p in (2, 3):
        report = gadual.bockstein_leibniz_check(p, 100, rng)
        assert report.passed, report.todict()


def test_dual_is_involutive_on_ranks():
    C = gadual.colie_complex(2, 2)
    Cv = C.dual()
    assert Cv.rank(1) == 2 and Cv.rank(0) == 2
    assert Cv.labels[0] == ['∂_T0', '∂_T1']
    assert Cv.labels[1] == ['∂_S0', '∂_S1']
    assert Cv.dual().ranks == C.ranks


def test_ext_table():
    for p, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        table = gadual.ext_table(p, n)
        assert [table[k]['rank'] for k in range(4)] == [n, 2 * n, n, 0]
    table = gadual.ext_table(2, 2)
    assert table[1]['basis'] == ['∂_S0', '∂_S1', 'τ∂_T0', 'τ∂_T1']
    assert table[2]['basis'] == ['τ∂_S0', 'τ∂_S1']


def test_pairing():
    for p, n in [(2, 3), (3, 2)]:
        assert_array_equal(gadual.pairing(p, n), np.identity(n))


def test_jordan_block():
    assert gadual.jordan_block_derivative() == [[0, 0], [1, 0]]


def test_lifted_teichmuller():
    neg = gadual.lifted_teichmuller_negative(2, 2)
    ring = neg[0].ring
    T0, lam = ring.gen('T_0'), ring.gen('lam')
    assert neg[0] == -lam * T0
    assert neg[1] == ring.zero()


def test_deformation_class():
    for p in (2, 3):
        c = gadual.deformation_class(p, 2)
        assert c['coefficient'] == p - 1
        assert c['lambda_power'] == p - 1
        assert gadual.deformation_class_check(p, 2)
    assert_raises(IndexOutOfRange, gadual.deformation_class, 2, 1)


def test_bockstein_classes():
    b = gadual.bockstein_of_label(3, 2, 'τ∂_T1', 1)
    assert b == gadual.named_class(3, 2, 'τ∂_S0', 2)
    assert not b.is_zero()
    assert_raises(IndexOutOfRange, gadual.named_class, 3, 2, 'τ∂_S7', 2)


def test_hom_complex_two_degrees():
    # Hom^(-1) = Hom(M^1, N^0) carries the sign (-1)^(-1)
    R = BaseRing(2, 2)
    M = gadual.ThetaComplex(R, {0: 2, 1: 1}, {0: R.constant([[1, 2]])})
    N = gadual.ThetaComplex(R, {0: 1, 1: 2}, {0: R.constant([[3], [1]])})
    H, layout = gadual.hom_complex(M, N)
    assert H.ranks == {-1: 1, 0: 4, 1: 4}
    assert H.differential(-1).dtype.kind == 'i'
    f = R.zero_vector(1)
    f[0, 0] = 1
    g = R.apply(H.differential(-1), f)
    e0, e1 = R.zero_vector(2), R.zero_vector(2)
    e0[0, 0] = e1[0, 1] = 1
    assert_array_equal(gadual.hom_apply(H, layout, M, N, 0, g, 0, e0), [[1]])
    assert_array_equal(gadual.hom_apply(H, layout, M, N, 0, g, 0, e1), [[2]])
    assert_array_equal(gadual.hom_apply(H, layout, M, N, 0, g, 1,
                                        np.array([[1]])), [[3, 1]])
    T, _ = gadual.tensor_complex(M, N)
    assert T.rank(1) == 2 * 2 + 1 * 1
