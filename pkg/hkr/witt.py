"""p-typical Witt vectors of finite length.

The sum, product and Frobenius polynomials are solved once per (p, n)
from the ghost equations over QQ. Solving for the i-th coordinate ends
with an exact division by p^i, and that division is where integrality is
checked. Later uses are all substitutions or evaluations.

Variables are X_i, Y_i (for sums and products) and T_i (for Frobenius
and ghost polynomials); X_i, Y_i and T_i all have weight p^i, which makes
every structure polynomial homogeneous.

"""
import functools
import os

from sympy import binomial, isprime

from .exceptions import (NotDivisible, IntegralityFailure, LengthMismatch,
                         LengthCapExceeded, PolynomialExplosion,
                         IndexOutOfRange, IncompatibleRings)
from .logger import log
from .ring import SeriesRing, WeightedSeries, ModPrimePower, rational

# Default caps on the length n per prime.
LENGTH_CAPS = {2: 4, 3: 3, 5: 2}

DEFAULT_MAX_TERMS = 200000


def max_terms():
    """Largest structure polynomial allowed, from $HKR_MAX_TERMS."""
    return int(os.environ.get('HKR_MAX_TERMS', DEFAULT_MAX_TERMS))


def max_length(p):
    return LENGTH_CAPS.get(p, 1)


def var(prefix, i):
    return '{}_{}'.format(prefix, i)


def witt_variables(p, prefix, count):
    return [(var(prefix, i), p ** i) for i in range(count)]


def ghost_polynomial(p, i, prefix='T', ring=None):
    """Phi_i = T_0^(p^i) + p T_1^(p^(i-1)) + ... + p^i T_i."""
    if i < 0:
        raise IndexOutOfRange('ghost index must be >= 0, got {}'.format(i))
    if ring is None:
        ring = SeriesRing(witt_variables(p, prefix, i + 1))
    terms = {}
    for j in range(i + 1):
        exps = [0] * ring.ngens
        exps[ring.index[var(prefix, j)]] = p ** (i - j)
        terms[tuple(exps)] = p ** j
    return WeightedSeries(ring, terms)


def linear_part(f):
    """The differential at the origin, as {variable: coefficient}."""
    d = {}
    for exps, c in f.terms.items():
        if sum(exps) == 1:
            d[f.ring.names[exps.index(1)]] = c
    return d


def divisible_by(f, p):
    """True if every coefficient of the integral series f is divisible by p."""
    return all(int(c.numerator) % p == 0 and c.denominator == 1
               for c in f.terms.values())


class WittPolynomialSystem(object):
    """Sum, product and Frobenius polynomials of W_n for a prime p.

    sum_polys, product_polys: S_0..S_{n-1}, P_0..P_{n-1} in X_0..X_{n-1},
    Y_0..Y_{n-1}.

    frobenius_polys: F_0..F_{n-1} in T_0..T_n.

    ghost_polys: Phi_0..Phi_n in T_0..T_n.

    """

    def __init__(self, prime, length):
        if not isprime(prime):
            raise ValueError('{} is not prime'.format(prime))
        if length < 1:
            raise LengthMismatch('Witt length must be >= 1, got {}'
                                 .format(length))
        self.prime = prime
        self.length = length
        p, n = prime, length
        self.xy_ring = SeriesRing(witt_variables(p, 'X', n) +
                                  witt_variables(p, 'Y', n))
        self.t_ring = SeriesRing(witt_variables(p, 'T', n + 1))
        self.ghost_polys = tuple(ghost_polynomial(p, i, 'T', self.t_ring)
                                 for i in range(n + 1))

    def _xy_ghosts(self):
        p, n = self.prime, self.length
        gx = [ghost_polynomial(p, i, 'X', self.xy_ring) for i in range(n)]
        gy = [ghost_polynomial(p, i, 'Y', self.xy_ring) for i in range(n)]
        return gx, gy

    @functools.cached_property
    def sum_polys(self):
        gx, gy = self._xy_ghosts()
        return self._solve('sum', [x + y for x, y in zip(gx, gy)])

    @functools.cached_property
    def product_polys(self):
        gx, gy = self._xy_ghosts()
        return self._solve('product', [x * y for x, y in zip(gx, gy)])

    @functools.cached_property
    def negation_polys(self):
        """N_0..N_{n-1} in T_0..T_{n-1} with Phi_i(N) = -Phi_i(T)."""
        return self._solve('negation',
                           [-g for g in self.ghost_polys[:self.length]])

    @functools.cached_property
    def frobenius_polys(self):
        return self._solve('frobenius', list(self.ghost_polys[1:]))

    def _solve(self, family, targets):
        """Solve Phi_i(Q_0, ..., Q_i) = targets[i] for Q_i, inductively."""
        p = self.prime
        polys = []
        limit = max_terms()
        for i, target in enumerate(targets):
            acc = target
            for j, q in enumerate(polys):
                acc = acc - q ** (p ** (i - j)) * p ** j
            try:
                q = acc.exact_div(p, i)
            except NotDivisible as e:
                raise IntegralityFailure('{} polynomial {} for p={}: {}'
                                         .format(family, i, p, e))
            if not q.is_integral():
                raise IntegralityFailure('{} polynomial {} for p={} has a '
                                         'non-integral coefficient'
                                         .format(family, i, p))
            if len(q) > limit:
                raise PolynomialExplosion(
                    '{} polynomial {} for p={}, n={} has {} terms, more '
                    'than HKR_MAX_TERMS={}'.format(family, i, p, self.length,
                                                   len(q), limit))
            log.debug('p={} {}[{}]: {} terms'.format(p, family, i, len(q)))
            polys.append(q)
        return tuple(polys)

    # -- identities --------------------------------------------------
    def _ghost_of(self, polys, i, ring):
        """Phi_i(polys[0], ..., polys[i]) as an element of ring."""
        phi = ghost_polynomial(self.prime, i, 'T')
        return phi.substitute(dict((var('T', j), polys[j])
                                   for j in range(i + 1)), ring=ring)

    def sum_ghost_identity(self, i):
        X = ghost_polynomial(self.prime, i, 'X', self.xy_ring)
        Y = ghost_polynomial(self.prime, i, 'Y', self.xy_ring)
        return self._ghost_of(self.sum_polys, i, self.xy_ring) == X + Y

    def product_ghost_identity(self, i):
        X = ghost_polynomial(self.prime, i, 'X', self.xy_ring)
        Y = ghost_polynomial(self.prime, i, 'Y', self.xy_ring)
        return self._ghost_of(self.product_polys, i, self.xy_ring) == X * Y

    def frobenius_ghost_identity(self, i):
        return (self._ghost_of(self.frobenius_polys, i, self.t_ring) ==
                self.ghost_polys[i + 1])

    def is_integral(self):
        return all(q.is_integral() for q in
                   self.sum_polys + self.product_polys + self.frobenius_polys)

    def frobenius_congruence(self, i):
        """F_i = T_i^p mod p."""
        T = self.t_ring.gen(var('T', i))
        return divisible_by(self.frobenius_polys[i] - T ** self.prime,
                            self.prime)

    def todict(self):
        return {'prime': self.prime,
                'length': self.length,
                'sum_polys': [q.todict() for q in self.sum_polys],
                'product_polys': [q.todict() for q in self.product_polys],
                'frobenius_polys': [q.todict()
                                    for q in self.frobenius_polys],
                'ghost_polys': [q.todict() for q in self.ghost_polys]}


@functools.lru_cache(maxsize=None)
def build_system(p, n, enforce_cap=True):
    """The cached WittPolynomialSystem for (p, n)."""
    if enforce_cap and n > max_length(p):
        raise LengthCapExceeded('Witt length {} exceeds the cap {} for p={}'
                                .format(n, max_length(p), p))
    log.debug('building Witt system p={} n={}'.format(p, n))
    return WittPolynomialSystem(p, n)


class WittVector(object):
    """A Witt vector (x_0, ..., x_{n-1}).

    Coordinates may be ints, rationals, ModPrimePower residues or
    WeightedSeries (for symbolic computations).
    """

    def __init__(self, prime, coordinates):
        self.prime = prime
        self.coordinates = tuple(coordinates)

    @property
    def length(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def __eq__(self, other):
        return (isinstance(other, WittVector) and
                self.prime == other.prime and
                len(self) == len(other) and
                all(a == b for a, b in zip(self, other)))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.prime, self.coordinates))

    def is_zero(self):
        return all(c == 0 for c in self.coordinates)

    def truncate(self, length):
        return WittVector(self.prime, self.coordinates[:length])

    def __repr__(self):
        return 'WittVector(p={}, {})'.format(
            self.prime, ', '.join(str(c) for c in self.coordinates))


def _zero_like(c):
    return c * 0


def _apply(polys, bindings):
    """Evaluate (scalar bindings) or substitute (series bindings)."""
    series = [b for b in bindings.values() if isinstance(b, WeightedSeries)]
    if series:
        ring = series[0].ring
        return tuple(q.substitute(bindings, ring=ring) for q in polys)
    return tuple(q.evaluate(bindings) for q in polys)


def _check(sys, *vectors):
    for x in vectors:
        if x.prime != sys.prime:
            raise IncompatibleRings('Witt vector for p={} used with p={}'
                                    .format(x.prime, sys.prime))
        if len(x) != sys.length:
            raise LengthMismatch('Witt vector of length {} used with a '
                                 'system of length {}'.format(len(x),
                                                              sys.length))


def _xy_bindings(sys, x, y):
    b = {}
    for i in range(sys.length):
        b[var('X', i)] = x[i]
        b[var('Y', i)] = y[i]
    return b


def witt_add(sys, x, y):
    _check(sys, x, y)
    return WittVector(sys.prime, _apply(sys.sum_polys,
                                        _xy_bindings(sys, x, y)))


def witt_mul(sys, x, y):
    _check(sys, x, y)
    return WittVector(sys.prime, _apply(sys.product_polys,
                                        _xy_bindings(sys, x, y)))


def witt_neg(sys, x):
    _check(sys, x)
    bindings = dict((var('T', j), x[j]) for j in range(sys.length))
    return WittVector(sys.prime, _apply(sys.negation_polys, bindings))


def witt_multiple(sys, x, k):
    """The k-fold sum x + ... + x."""
    _check(sys, x)
    result = WittVector(sys.prime, [_zero_like(c) for c in x])
    for _ in range(k):
        result = witt_add(sys, result, x)
    return result


def frobenius(sys, x):
    """F(x), one coordinate shorter than x.

    F_i involves T_0..T_{i+1}, so a vector of length m gives the first
    m - 1 coordinates of F(x).
    """
    m = len(x)
    if m < 2 or m - 1 > sys.length:
        raise LengthMismatch('Frobenius of a length {} vector needs a '
                             'system of length >= {}'.format(m, m - 1))
    bindings = dict((var('T', j), x[j]) for j in range(m))
    return WittVector(sys.prime,
                      _apply(sys.frobenius_polys[:m - 1], bindings))


def verschiebung(x):
    """(x_0, ..., x_{n-1}) -> (0, x_0, ..., x_{n-2})."""
    if len(x) == 0:
        return x
    return WittVector(x.prime,
                      (_zero_like(x[0]),) + tuple(x.coordinates[:-1]))


def teichmuller(a, p, n):
    """The multiplicative lift [a] = (a, 0, ..., 0) of length n."""
    return WittVector(p, (a,) + tuple(_zero_like(a) for _ in range(n - 1)))


def teichmuller_action(a, x):
    """[a] x, computed coordinatewise as (a^(p^i) x_i)."""
    p = x.prime
    return WittVector(p, tuple(a ** (p ** i) * c for i, c in enumerate(x)))


def ghost_components(x):
    """(Phi_0(x), ..., Phi_{n-1}(x))."""
    p = x.prime
    out = []
    for i in range(len(x)):
        out.append(sum((x[j] ** (p ** (i - j)) * p ** j
                        for j in range(1, i + 1)), x[0] ** (p ** i)))
    return tuple(out)


def symbolic_vector(p, n, prefix='T', ring=None):
    """The generic Witt vector (T_0, ..., T_{n-1}) as series."""
    if ring is None:
        ring = SeriesRing(witt_variables(p, prefix, n))
    return WittVector(p, tuple(ring.gen(var(prefix, i)) for i in range(n)))


def random_vector(p, n, k, rng):
    """A random Witt vector over Z/p^k; rng is a numpy RandomState."""
    return WittVector(p, tuple(ModPrimePower(int(rng.randint(0, p ** k)), p, k)
                               for _ in range(n)))


# -- Sekiguchi-Suwa polynomials ---------------------------------------

def sekiguchi_suwa_G(p, i, n):
    """G_i = (F_i - T_i^p) / p, an integral polynomial in T_0..T_{i+1}."""
    sys = build_system(p, n)
    if not 0 <= i < n:
        raise IndexOutOfRange('G_{} needs 0 <= i < n = {}'.format(i, n))
    T = sys.t_ring.gen(var('T', i))
    try:
        return (sys.frobenius_polys[i] - T ** p).exact_div(p, 1)
    except NotDivisible as e:
        raise IntegralityFailure('G_{} for p={}: {}'.format(i, p, e))


def sekiguchi_suwa_recursion(p, i, n):
    """The recursion as it is usually displayed.

    p > 2: G_i = T_{i+1} - sum_{j<i} T_j^(p(p^(i-j)-1)) G_j
    p = 2: G_i = T_{i+1} - sum_{j<i} (T_j^(2(2^(i-j)-1)) G_j
                                     + T_j^(2(2^(i-j)-2)) G_j^2)

    This is an identity modulo p; see sekiguchi_suwa_exact_recursion.
    """
    sys = build_system(p, n)
    ring = sys.t_ring
    rhs = ring.gen(var('T', i + 1))
    for j in range(i):
        m = i - j
        Tj = ring.gen(var('T', j))
        Gj = sekiguchi_suwa_G(p, j, n)
        if p > 2:
            rhs = rhs - Tj ** (p * (p ** m - 1)) * Gj
        else:
            rhs = rhs - (Tj ** (2 * (2 ** m - 1)) * Gj +
                         Tj ** (2 * (2 ** m - 2)) * Gj ** 2)
    return rhs


def exact_recursion_coefficient(p, m, k):
    """C(p^m, k) p^(k - m - 1), always an integer for 1 <= k <= p^m."""
    c = rational(int(binomial(p ** m, k)) * p ** k, p ** (m + 1))
    if c.denominator != 1:
        raise IntegralityFailure('recursion coefficient p={} m={} k={}'
                                 .format(p, m, k))
    return int(c.numerator)


def sekiguchi_suwa_exact_recursion(p, i, n):
    """G_i = T_{i+1} - sum_{j<i} sum_{k=1}^{p^(i-j)}
                 C(p^(i-j), k) p^(k-(i-j)-1) T_j^(p(p^(i-j)-k)) G_j^k

    which is the ghost equation of F with F_j = T_j^p + p G_j expanded
    binomially. Only the k = 1 terms (and for p = 2 the k = 2 terms)
    survive modulo p, which gives the displayed recursion.
    """
    sys = build_system(p, n)
    ring = sys.t_ring
    rhs = ring.gen(var('T', i + 1))
    for j in range(i):
        m = i - j
        Tj = ring.gen(var('T', j))
        Gj = sekiguchi_suwa_G(p, j, n)
        for k in range(1, p ** m + 1):
            c = exact_recursion_coefficient(p, m, k)
            if c:
                rhs = rhs - Tj ** (p * (p ** m - k)) * Gj ** k * c
    return rhs


def recursion_holds_mod_p(p, i, n):
    return divisible_by(sekiguchi_suwa_G(p, i, n) -
                        sekiguchi_suwa_recursion(p, i, n), p)


def recursion_holds_exactly(p, i, n):
    return sekiguchi_suwa_G(p, i, n) == sekiguchi_suwa_recursion(p, i, n)


def exact_recursion_holds(p, i, n):
    return (sekiguchi_suwa_G(p, i, n) ==
            sekiguchi_suwa_exact_recursion(p, i, n))


def differential_at_origin_holds(p, i, n):
    """dG_i at T = 0 is dT_{i+1} modulo p."""
    d = linear_part(sekiguchi_suwa_G(p, i, n))
    target = var('T', i + 1)
    for name, c in d.items():
        expected = 1 if name == target else 0
        if (int(c.numerator) - expected) % p != 0:
            return False
    return target in d
