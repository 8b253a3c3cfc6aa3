"""One-dimensional formal group laws over truncated series rings.

Laws are WeightedSeries in v, w (weight 1), optionally involving the
deformation parameter lam (weight -1, always capped). The rings built
here also carry a third variable u so that associativity can be checked
inside the law's own ring.

"""
from sympy import factorial

from .exceptions import (NonComposable, PsiTruncationError,
                         IntegralityFailure)
from .logger import log
from .ring import (SeriesRing, WeightedSeries, RATIONALS, exp_truncated,
                   is_p_integral, rational)
from . import witt

LAMBDA = 'lam'


def law_ring(degree, lambda_cap=None, domain=RATIONALS):
    """u, v, w of weight 1 truncated at total degree `degree`, plus lam
    (weight -1, largest exponent lambda_cap) when lambda_cap is given."""
    variables = ['u', 'v', 'w']
    caps = {}
    if lambda_cap is not None:
        variables.append((LAMBDA, -1))
        caps[LAMBDA] = lambda_cap
    return SeriesRing(variables, degree=degree, caps=caps, domain=domain)


def _with_variable(ring, name, weight=1):
    if name in ring.index:
        return ring
    return ring.derive(list(zip(ring.names, ring.weights)) + [(name, weight)])


class FormalGroupLaw1D(object):
    """A one-dimensional formal group law F(v, w)."""

    def __init__(self, law, name=None):
        if law.constant_term() != 0:
            raise NonComposable('a formal group law has no constant term')
        self.law = law
        self.ring = law.ring
        self.name = name or 'F'

    def __call__(self, a, b):
        """F(a, b) for series a, b (in the law's ring unless both are
        elsewhere)."""
        return self.law.substitute({'v': a, 'w': b})

    def coerce(self, ring):
        return FormalGroupLaw1D(self.law.coerce(ring), self.name)

    def __eq__(self, other):
        return isinstance(other, FormalGroupLaw1D) and self.law == other.law

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.law)

    def __repr__(self):
        return '{}(v, w) = {}'.format(self.name, self.law)

    def todict(self):
        return {'name': self.name, 'law': self.law.todict()}


class SeriesMorphism(object):
    """A one-variable series phi(u) with zero constant term."""

    def __init__(self, series, variable='u', name=None):
        if series.constant_term() != 0:
            raise NonComposable('a morphism of formal groups has no '
                                'constant term')
        self.series = series
        self.variable = variable
        self.name = name or 'phi'

    def __call__(self, arg):
        return self.series.substitute({self.variable: arg})

    def coerce(self, ring):
        return SeriesMorphism(self.series.coerce(ring), self.variable,
                              self.name)

    def __repr__(self):
        return '{}({}) = {}'.format(self.name, self.variable, self.series)


def validate_fgl(F):
    """Unit, commutativity and associativity, to the truncation of F."""
    ring = _with_variable(F.ring, 'u')
    F = F.coerce(ring)
    u, v, w = ring.gen('u'), ring.gen('v'), ring.gen('w')
    zero = ring.zero()
    if F(v, zero) != v or F(zero, w) != w:
        log.debug('{}: unit law fails'.format(F.name))
        return False
    if F(w, v) != F.law:
        log.debug('{}: not commutative'.format(F.name))
        return False
    left = F(F(u, v), w)
    right = F(u, F(v, w))
    if left != right:
        log.debug('{}: associativity fails, difference {}'
                  .format(F.name, left - right))
        return False
    return True


def additive_law(ring):
    """v + w"""
    return FormalGroupLaw1D(ring.gen('v') + ring.gen('w'), 'G_a')


def multiplicative_law(ring):
    """v + w + v w"""
    v, w = ring.gen('v'), ring.gen('w')
    return FormalGroupLaw1D(v + w + v * w, 'G_m')


def g_lambda(degree=6, lambda_cap=4, ring=None):
    """The deformation v + w + lam v w of G_a into G_m."""
    if ring is None:
        ring = law_ring(degree, lambda_cap)
    v, w, lam = ring.gen('v'), ring.gen('w'), ring.gen(LAMBDA)
    return FormalGroupLaw1D(v + w + lam * v * w, 'G_lam')


def specialize(F, lam):
    """Set lam to a scalar; the result lives in the ring without lam."""
    ring = F.ring
    target = ring.derive([(n, wt) for n, wt in zip(ring.names, ring.weights)
                          if n != LAMBDA])
    law = F.law.substitute({LAMBDA: lam}, ring=target)
    return FormalGroupLaw1D(law, '{}|lam={}'.format(F.name, lam))


def rescaled_law(F, lambda_cap):
    """lam^-1 F(lam v, lam w): each term c v^i w^j picks up lam^(i+j-1)."""
    base = F.ring
    if LAMBDA in base.index:
        raise ValueError('{} already involves lam'.format(F.name))
    ring = base.derive(list(zip(base.names, base.weights)) +
                       [(LAMBDA, -1)],
                       caps={LAMBDA: lambda_cap})
    iv, iw = base.index['v'], base.index['w']
    terms = {}
    for exps, c in F.law.terms.items():
        shift = exps[iv] + exps[iw] - 1
        terms[tuple(exps) + (shift,)] = c
    return FormalGroupLaw1D(WeightedSeries(ring, terms),
                            '{}_lam'.format(F.name))


def obstruction_order(F):
    """Smallest power of lam at which F differs from v + w, or None."""
    ring = F.ring
    defect = F.law - (ring.gen('v') + ring.gen('w'))
    if defect.is_zero():
        return None
    i = ring.index[LAMBDA]
    return min(e[i] for e in defect.terms)


def truncate_lambda(f, lambda_cap):
    """f modulo lam^(lambda_cap + 1)."""
    caps = dict((n, c) for n, c in zip(f.ring.names, f.ring.caps)
                if c is not None)
    caps[LAMBDA] = lambda_cap
    return f.coerce(f.ring.derive(caps=caps))


# -- exponentials -----------------------------------------------------

def morphism_ring(degree, lambda_cap):
    return law_ring(degree, lambda_cap)


def truncated_exponential(p, ring=None):
    """E_lam(u) = sum_{n=1}^{p-1} lam^(n-1) u^n / n!"""
    if p < 2:
        raise ValueError('p must be >= 2')
    if ring is None:
        ring = morphism_ring(max(2 * p, 4), p)
    u, lam = ring.gen('u'), ring.gen(LAMBDA)
    E = ring.zero()
    for n in range(1, p):
        E = E + lam ** (n - 1) * u ** n * rational(1, factorial(n))
    return SeriesMorphism(E, 'u', 'E_lam')


def is_homomorphism(phi, F, G, lambda_modulus, degree):
    """phi(F(u, v)) == G(phi(u), phi(v)) mod lam^lambda_modulus, to total
    degree `degree` in u, v."""
    if lambda_modulus < 1:
        raise ValueError('lambda_modulus must be >= 1')
    ring = law_ring(degree, lambda_modulus - 1)
    phi, F, G = phi.coerce(ring), F.coerce(ring), G.coerce(ring)
    u, v = ring.gen('u'), ring.gen('v')
    left = phi(F(u, v))
    right = G(phi(u), phi(v))
    if left != right:
        log.debug('{} is not a homomorphism {} -> {}: defect {}'
                  .format(phi.name, F.name, G.name, left - right))
    return left == right


def exponential_defect(p, degree):
    """G_lam(E(u), E(v)) - E(u + v) modulo lam^p."""
    ring = law_ring(degree, p - 1)
    E = truncated_exponential(p, ring)
    G = g_lambda(ring=ring)
    u, v = ring.gen('u'), ring.gen('v')
    return G(E(u), E(v)) - E(u + v)


def expected_exponential_defect(p, degree):
    """lam^(p-1) ((u+v)^p - u^p - v^p) / p!"""
    ring = law_ring(degree, p - 1)
    u, v, lam = ring.gen('u'), ring.gen('v'), ring.gen(LAMBDA)
    return (lam ** (p - 1) * ((u + v) ** p - u ** p - v ** p) *
            rational(1, factorial(p)))


def artin_hasse(p, degree):
    """exp(sum_r T^(p^r) / p^r) truncated at degree `degree` in T."""
    if degree < 1:
        raise ValueError('degree must be >= 1')
    ring = SeriesRing(['T'], degree=degree)
    T = ring.gen('T')
    f = ring.zero()
    q = 1
    while q <= degree:
        f = f + T ** q * rational(1, q)
        q *= p
    return exp_truncated(f)


# -- the homomorphism Psi ---------------------------------------------

def minimal_psi_coordinates(p, lambda_degree):
    """Largest j with p^j <= lambda_degree + 1.

    T_j enters Psi through lam^(p^j - 1), so coordinates beyond this one
    vanish modulo lam^(lambda_degree + 1).
    """
    m = 0
    while p ** (m + 1) <= lambda_degree + 1:
        m += 1
    return m


def psi_ring(p, m, degree, lambda_degree):
    return SeriesRing([witt.var('T', j) for j in range(m + 1)] +
                      [(LAMBDA, -1)],
                      degree=degree, caps={LAMBDA: lambda_degree})


def psi_series(p, m, degree, lambda_degree):
    """Psi(T_0..T_m) = (prod_j AH(lam^(p^j) T_j) - 1) / lam.

    degree bounds the total T-degree, lambda_degree is the largest power
    of lam kept.
    """
    top = minimal_psi_coordinates(p, lambda_degree)
    if m > top:
        raise PsiTruncationError(
            'T_{} only enters Psi at lam^{}, past the cap lam^{}; use m <= {}'
            .format(m, p ** m - 1, lambda_degree, top))
    if m < 0:
        raise PsiTruncationError('m must be >= 0')
    # one extra power of lam, removed by the division
    big = psi_ring(p, m, degree, lambda_degree + 1)
    lam = big.gen(LAMBDA)
    f = big.zero()
    for j in range(m + 1):
        x = lam ** (p ** j) * big.gen(witt.var('T', j))
        q = 1
        while q <= degree:
            f = f + x ** q * rational(1, q)
            q *= p
    product = exp_truncated(f) - 1
    ring = psi_ring(p, m, degree, lambda_degree)
    il = big.index[LAMBDA]
    terms = {}
    for exps, c in product.terms.items():
        if exps[il] == 0:
            raise IntegralityFailure('Psi numerator has a lam-free term')
        shifted = list(exps)
        shifted[il] -= 1
        terms[tuple(shifted)] = c
    psi = WeightedSeries(ring, terms)
    if not is_p_integral(psi, p):
        raise IntegralityFailure('Psi for p={} has a coefficient with p in '
                                 'the denominator'.format(p))
    log.debug('Psi p={} m={}: {} terms'.format(p, m, len(psi)))
    return psi


def psi_matches_exponential(p, m, degree, lambda_degree):
    """Psi = E_lam(T_0) modulo lam^(p-1) (or the lam cap, if lower)."""
    psi = truncate_lambda(psi_series(p, m, degree, lambda_degree),
                          min(p - 2, lambda_degree))
    ring = psi.ring
    T0, lam = ring.gen('T_0'), ring.gen(LAMBDA)
    E = ring.zero()
    for n in range(1, p):
        E = E + lam ** (n - 1) * T0 ** n * rational(1, factorial(n))
    return psi == E


def psi_projection(p, m, degree, lambda_degree):
    """Psi at lam = 0, which should be the projection to T_0."""
    psi = psi_series(p, m, degree, lambda_degree)
    ring = psi.ring
    target = ring.derive([n for n in ring.names if n != LAMBDA], caps={})
    return psi.substitute({LAMBDA: 0}, ring=target)


def _check_minimal(p, m, lambda_degree):
    top = minimal_psi_coordinates(p, lambda_degree)
    if m != top:
        raise PsiTruncationError('lam^{} needs exactly m = {} Witt '
                                 'coordinates, got {}'
                                 .format(lambda_degree, top, m))


def psi_additivity(p, m, degree, lambda_degree):
    """Psi(X +_W Y) == G_lam(Psi(X), Psi(Y))."""
    _check_minimal(p, m, lambda_degree)
    psi = psi_series(p, m, degree, lambda_degree)
    sys = witt.build_system(p, m + 1)
    ring = SeriesRing([witt.var('X', j) for j in range(m + 1)] +
                      [witt.var('Y', j) for j in range(m + 1)] +
                      [(LAMBDA, -1)],
                      degree=degree, caps={LAMBDA: lambda_degree})
    T = [witt.var('T', j) for j in range(m + 1)]
    X = dict((T[j], ring.gen(witt.var('X', j))) for j in range(m + 1))
    Y = dict((T[j], ring.gen(witt.var('Y', j))) for j in range(m + 1))
    S = dict((T[j], sys.sum_polys[j].coerce(ring)) for j in range(m + 1))
    left = psi.substitute(S, ring=ring)
    a = psi.substitute(X, ring=ring)
    b = psi.substitute(Y, ring=ring)
    lam = ring.gen(LAMBDA)
    return left == a + b + lam * a * b


def psi_kills_relation(p, m, degree, lambda_degree):
    """Psi(V T) == Psi([lam^(p-1)] T)."""
    _check_minimal(p, m, lambda_degree)
    psi = psi_series(p, m, degree, lambda_degree)
    ring = psi.ring
    Tv = witt.symbolic_vector(p, m + 1, 'T', ring)
    lam = ring.gen(LAMBDA)
    shifted = witt.verschiebung(Tv)
    scaled = witt.teichmuller_action(lam ** (p - 1), Tv)
    names = [witt.var('T', j) for j in range(m + 1)]
    left = psi.substitute(dict(zip(names, shifted)), ring=ring)
    right = psi.substitute(dict(zip(names, scaled)), ring=ring)
    return left == right


def psi_homomorphism_check(p, m, degree, lambda_degree):
    """Both homomorphism clauses: additivity for the Witt sum and
    vanishing on the image of V - [lam^(p-1)]."""
    a = psi_additivity(p, m, degree, lambda_degree)
    b = psi_kills_relation(p, m, degree, lambda_degree)
    if not (a and b):
        log.debug('Psi p={} m={}: additivity {}, relation {}'
                  .format(p, m, a, b))
    return a and b


# -- height h ---------------------------------------------------------

def height_h_law(p, h):
    """v + w + (v^N + w^N - (v+w)^N) / p modulo (v, w)^(N+1), N = p^h."""
    if h < 1:
        raise ValueError('height must be >= 1')
    N = p ** h
    ring = law_ring(N)
    v, w = ring.gen('v'), ring.gen('w')
    c = (v ** N + w ** N - (v + w) ** N) * rational(1, p)
    return FormalGroupLaw1D(v + w + c, 'F_{}'.format(h))


def random_perturbation(F, rng, bound=3):
    """F plus a symmetric term c (v^a w^b + v^b w^a) of degree >= 4.

    Such a term is never a multiple of the symmetric 2-cocycle in its
    degree, so the result is commutative and unital but not associative.
    """
    D = F.ring.degree
    if D is None or D < 4:
        raise ValueError('perturbations need truncation degree >= 4')
    n = int(rng.randint(4, D + 1))
    a = int(rng.randint(1, n))
    c = 0
    while c == 0:
        c = int(rng.randint(-bound, bound + 1))
    ring = F.ring
    h = ring.monomial({'v': a, 'w': n - a}, c)
    if a != n - a:
        h = h + ring.monomial({'v': n - a, 'w': a}, c)
    return FormalGroupLaw1D(F.law + h, '{}+perturbation'.format(F.name))
