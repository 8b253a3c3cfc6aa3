import numpy as np
from numpy.testing import assert_raises

from hkr.exceptions import PsiTruncationError
from hkr.ring import rational, is_p_integral
from hkr import fgl


def test_laws_are_valid():
    ring = fgl.law_ring(6, 3)
    assert fgl.validate_fgl(fgl.additive_law(ring))
    assert fgl.validate_fgl(fgl.multiplicative_law(ring))
    assert fgl.validate_fgl(fgl.g_lambda(ring=ring))


def test_perturbation_detected():
    rng = np.random.RandomState(0)
    F = fgl.additive_law(fgl.law_ring(6))
    for _ in range(20):
        assert not fgl.validate_fgl(fgl.random_perturbation(F, rng))


def test_specialize():
    G = fgl.g_lambda(6, 2)
    Gm = fgl.specialize(G, 1)
    v, w = Gm.ring.gen('v'), Gm.ring.gen('w')
    assert Gm.law == v + w + v * w
    assert fgl.specialize(G, 0).law == v + w


def test_exponential_split():
    for p in (2, 3, 5):
        D = 2 * p
        ring = fgl.law_ring(D, p)
        E = fgl.truncated_exponential(p, ring)
        Ga, G = fgl.additive_law(ring), fgl.g_lambda(ring=ring)
        assert fgl.is_homomorphism(E, Ga, G, p - 1, D)
        assert not fgl.is_homomorphism(E, Ga, G, p, D)


def test_exponential_defect():
    for p in (2, 3, 5):
        D = 2 * p
        assert fgl.exponential_defect(p, D) == \
            fgl.expected_exponential_defect(p, D)
    # p = 3: lam^2 (3 u^2 v + 3 u v^2) / 6
    d = fgl.exponential_defect(3, 6)
    assert d.coefficient({'u': 2, 'v': 1, 'lam': 2}) == rational(1, 2)


def test_artin_hasse():
    for p in (2, 3, 5):
        AH = fgl.artin_hasse(p, 30)
        assert is_p_integral(AH, p)
        assert AH.coefficient({'T': 1}) == 1
    # plain exp is not 2-integral
    AH = fgl.artin_hasse(2, 4)
    assert AH.coefficient({'T': 2}) == 1


def test_minimal_psi_coordinates():
    assert fgl.minimal_psi_coordinates(2, 2) == 1
    assert fgl.minimal_psi_coordinates(2, 3) == 2
    assert fgl.minimal_psi_coordinates(3, 3) == 1
    assert fgl.minimal_psi_coordinates(3, 1) == 0


def test_psi_truncation():
    assert_raises(PsiTruncationError, fgl.psi_series, 2, 2, 4, 2)
    assert_raises(PsiTruncationError, fgl.psi_homomorphism_check,
                  2, 0, 4, 2)


def test_psi():
    for p, m, L in [(2, 1, 2), (2, 2, 3), (3, 1, 3)]:
        psi = fgl.psi_series(p, m, 5, L)
        assert is_p_integral(psi, p)
        proj = fgl.psi_projection(p, m, 5, L)
        assert proj == proj.ring.gen('T_0')
        assert fgl.psi_matches_exponential(p, m, 5, L)
        assert fgl.psi_homomorphism_check(p, m, 5, L)


def test_psi_first_terms():
    # p = 2: Psi = T_0 + lam (T_0^2 + T_1) modulo lam^2
    psi = fgl.psi_series(2, 1, 3, 1)
    assert psi.coefficient({'T_0': 1}) == 1
    assert psi.coefficient({'T_1': 1, 'lam': 1}) == 1
    assert psi.coefficient({'T_0': 2, 'lam': 1}) == 1


def test_height_laws():
    F = fgl.height_h_law(2, 1)
    v, w = F.ring.gen('v'), F.ring.gen('w')
    assert F.law == v + w - v * w
    for p, h in [(2, 1), (2, 2), (3, 1)]:
        F = fgl.height_h_law(p, h)
        assert fgl.validate_fgl(F)
        N = p ** h
        assert fgl.obstruction_order(fgl.rescaled_law(F, N - 1)) == N - 1


def test_obstruction_additive():
    F = fgl.additive_law(fgl.law_ring(4))
    assert fgl.obstruction_order(fgl.rescaled_law(F, 3)) is None
