import math

import numpy as np
from numpy.testing import assert_raises

from hkr.exceptions import (NotDivisible, IncompatibleRings, NonComposable,
                            InvalidCoefficientRing)
from hkr.ring import (rational, rational_str, parse_rational, valuation_p,
                      exact_div_p, ModPrimePower, ResidueRing, RATIONALS,
                      SeriesRing, WeightedSeries, exp_truncated, derivative,
                      is_p_integral, reduce_series, random_series)


def test_valuation():
    assert valuation_p(rational(12), 2) == 2
    assert valuation_p(rational(1, 9), 3) == -2
    assert valuation_p(rational(5, 7), 3) == 0
    assert valuation_p(0, 5) == math.inf


def test_exact_div():
    assert exact_div_p(rational(18), 2, 3) == rational(2)
    assert_raises(NotDivisible, exact_div_p, rational(6), 2, 3)


def test_rational_text():
    assert rational_str(rational(-3, 6)) == '-1/2'
    assert rational_str(rational(4)) == '4'
    assert parse_rational('-1/2') == rational(-1, 2)


def test_mod_prime_power():
    a = ModPrimePower(7, 3, 2)
    b = ModPrimePower(5, 3, 2)
    assert (a + b).value == 3
    assert (a * b).value == 35 % 9
    assert (a - b) == 2
    assert a.inverse() * a == 1
    assert_raises(NotDivisible, ModPrimePower(3, 3, 2).inverse)
    assert_raises(IncompatibleRings, lambda: a + ModPrimePower(1, 3, 1))


def test_residue_reduction():
    R = ResidueRing(5, 2)
    assert R(rational(1, 2)) * 2 == 1
    assert_raises(NotDivisible, R, rational(1, 5))
    # reduction is a ring homomorphism on p-integral rationals
    x, y = rational(3, 7), rational(-2, 11)
    assert R(x * y) == R(x) * R(y)
    assert R(x + y) == R(x) + R(y)


def test_truncation():
    ring = SeriesRing(['x', 'y'], degree=3)
    x, y = ring.gens()
    f = (1 + x + y) ** 5
    assert f.degree() == 3
    assert f.coefficient({'x': 1, 'y': 2}) == 30
    assert f.coefficient({'x': 2, 'y': 2}) == 0


def test_negative_weight_needs_cap():
    assert_raises(ValueError, SeriesRing, ['u', ('lam', -1)])
    ring = SeriesRing(['u', ('lam', -1)], degree=2, caps={'lam': 1})
    u, lam = ring.gens()
    # lam does not count toward the degree; its exponent is capped
    assert (u * lam) ** 2 == 0
    assert (u * lam * u) == ring.monomial({'u': 2, 'lam': 1})


def test_associative_under_truncation():
    rng = np.random.RandomState(3)
    ring = SeriesRing(['a', 'b', ('lam', -1)], degree=4, caps={'lam': 2})
    for _ in range(10):
        f, g, h = [random_series(ring, rng) for _ in range(3)]
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_substitute():
    ring = SeriesRing(['x', 'y'], degree=4)
    x, y = ring.gens()
    f = x * x + y
    g = f.substitute({'x': x + y})
    assert g == x * x + 2 * x * y + y * y + y


def test_substitute_constant_term():
    ring = SeriesRing(['x'], degree=4)
    x = ring.gen('x')
    assert_raises(NonComposable, (x * x).substitute, {'x': 1 + x})


def test_exp_and_derivative():
    ring = SeriesRing(['x'], degree=6)
    x = ring.gen('x')
    e = exp_truncated(x)
    assert e.coefficient({'x': 5}) == rational(1, 120)
    # d/dx exp(x) = exp(x) up to the truncation
    assert derivative(e, 'x') - e == -e.homogeneous_part(6)
    assert_raises(NonComposable, exp_truncated, 1 + x)


def test_exp_needs_rationals():
    ring = SeriesRing(['x'], degree=3, domain=ResidueRing(3))
    assert_raises(InvalidCoefficientRing, exp_truncated, ring.gen('x'))


def test_p_integrality_and_reduction():
    ring = SeriesRing(['x'], degree=4)
    x = ring.gen('x')
    f = x + x ** 2 / 2
    assert is_p_integral(f, 3)
    assert not is_p_integral(f, 2)
    g = reduce_series(f, ResidueRing(3))
    assert g.coefficient({'x': 2}) == 2
    assert g.ring.domain == ResidueRing(3)


def test_coerce_by_name():
    small = SeriesRing(['x'], degree=5)
    big = SeriesRing(['y', 'x'], degree=2)
    f = (1 + small.gen('x')) ** 3
    g = f.coerce(big)
    assert g == 1 + 3 * big.gen('x') + 3 * big.gen('x') ** 2
    assert_raises(IncompatibleRings, big.gen('y').coerce, small)


def test_evaluate_residues():
    ring = SeriesRing(['x', 'y'])
    x, y = ring.gens()
    f = x * y + x ** 3 / 2
    v = f.evaluate({'x': ModPrimePower(2, 5), 'y': ModPrimePower(3, 5)})
    assert v == (6 + 4) % 5


def test_json_text():
    ring = SeriesRing(['x', ('lam', -1)], degree=3, caps={'lam': 1})
    x, lam = ring.gens()
    f = x / 3 - lam * x ** 2
    g = WeightedSeries.from_json(f.to_json())
    assert g == f and g.ring == ring
    assert f.to_text() == '1/3 * x^1 + -1 * x^2 lam^1'


def test_rationals_domain():
    assert RATIONALS(rational(2, 4)) == rational(1, 2)
    assert RATIONALS.to_str(rational(2, 4)) == '1/2'
