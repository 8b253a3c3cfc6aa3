"""Exact coefficient arithmetic and truncated weighted series.

Two coefficient domains are used throughout hkr:

RATIONALS
  characteristic 0, backed by sympy's ``QQ`` domain elements.

ResidueRing(p, k)
  Z/p^k, whose elements are :class:`ModPrimePower` values.

A :class:`WeightedSeries` lives in a :class:`SeriesRing`, which fixes the
variable names, their integer weights, the coefficient domain and the
truncation: a bound D on the total weighted degree of the positive-weight
variables plus optional per-variable exponent caps. Variables of weight
<= 0 (such as lambda, of weight -1) must carry a cap. With that convention
the truncated monomials form an ideal, so truncated arithmetic is still
associative and distributive.

"""
import fractions
import json
import math
import numbers
import sys

from sympy import QQ, multiplicity, mod_inverse
from sympy.polys.polyerrors import CoercionFailed

from .exceptions import (NotDivisible, IncompatibleRings, NonComposable,
                         InvalidCoefficientRing)
from .logger import log

Rational = QQ.dtype
INFINITY = math.inf


def rational(numerator, denominator=1):
    """Return the exact rational numerator/denominator."""
    return QQ(int(numerator), int(denominator))


def to_rational(x):
    """Convert ints, Fractions, sympy numbers or QQ elements to QQ."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, ModPrimePower):
        raise IncompatibleRings('{!r} is not a rational number'.format(x))
    if isinstance(x, numbers.Integral):
        return QQ(int(x))
    if isinstance(x, fractions.Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ.convert(x)


def rational_str(x):
    """'num' or 'num/den'."""
    x = to_rational(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return '{}/{}'.format(int(x.numerator), int(x.denominator))


def parse_rational(s):
    if '/' in s:
        num, den = s.split('/')
        return rational(int(num), int(den))
    return rational(int(s))


def valuation_p(x, p):
    """The p-adic valuation of a rational number.

    Returns math.inf for zero.
    """
    x = to_rational(x)
    if x == 0:
        return INFINITY
    return (multiplicity(p, abs(int(x.numerator))) -
            multiplicity(p, int(x.denominator)))


def exact_div_p(x, e, p):
    """Return x / p**e, insisting that the quotient stays p-integral
    whenever x was, i.e. valuation_p(x) >= e."""
    x = to_rational(x)
    v = valuation_p(x, p)
    if v < e:
        raise NotDivisible('{} is not divisible by {}^{} (valuation {})'
                           .format(rational_str(x), p, e, v))
    return x / QQ(p ** e)


class ModPrimePower(object):
    """A residue class modulo p^k, stored as 0 <= value < p^k."""
    __slots__ = ('prime', 'exponent', 'value')

    def __init__(self, value, prime, exponent=1):
        self.prime = prime
        self.exponent = exponent
        self.value = int(value) % (prime ** exponent)

    @property
    def modulus(self):
        return self.prime ** self.exponent

    def ring(self):
        return ResidueRing(self.prime, self.exponent)

    def _new(self, value):
        return ModPrimePower(value, self.prime, self.exponent)

    def _coerce(self, other):
        if isinstance(other, ModPrimePower):
            if (other.prime, other.exponent) != (self.prime, self.exponent):
                raise IncompatibleRings('Z/{}^{} vs Z/{}^{}'.format(
                    self.prime, self.exponent, other.prime, other.exponent))
            return other.value
        if isinstance(other, numbers.Integral):
            return int(other)
        if isinstance(other, (Rational, fractions.Fraction)):
            return self.ring()(other).value
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self._new(self.value - v)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self._new(v - self.value)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self._new(self.value * v)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return self._new(pow(self.value, n, self.modulus))

    def is_unit(self):
        return self.value % self.prime != 0

    def inverse(self):
        if not self.is_unit():
            raise NotDivisible('{!r} is not a unit'.format(self))
        return self._new(mod_inverse(self.value, self.modulus))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self * self._new(v).inverse()

    def __eq__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.value == v % self.modulus

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        return hash((self.value, self.prime, self.exponent))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return '{} mod {}^{}'.format(self.value, self.prime, self.exponent)

    def __str__(self):
        return str(self.value)


class RationalField(object):
    """Characteristic-0 coefficients (sympy QQ)."""
    characteristic = 0

    def __call__(self, value):
        return to_rational(value)

    @property
    def zero(self):
        return QQ(0)

    @property
    def one(self):
        return QQ(1)

    def to_str(self, c):
        return rational_str(c)

    def from_str(self, s):
        return parse_rational(s)

    def todict(self):
        return {'type': 'QQ'}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash('QQ')

    def __repr__(self):
        return 'QQ'


RATIONALS = RationalField()


class ResidueRing(object):
    """The ring Z/p^k."""

    def __init__(self, prime, exponent=1):
        if exponent < 1:
            raise ValueError('exponent must be >= 1, got {}'.format(exponent))
        self.prime = prime
        self.exponent = exponent
        self.modulus = prime ** exponent

    @property
    def characteristic(self):
        return self.modulus

    def __call__(self, value):
        """Reduce an integer, residue or p-integral rational into Z/p^k.

        Residues modulo a higher power of the same prime are reduced
        further; anything else raises.
        """
        if isinstance(value, ModPrimePower):
            if value.prime != self.prime or value.exponent < self.exponent:
                raise IncompatibleRings('cannot map {!r} into {!r}'
                                        .format(value, self))
            return ModPrimePower(value.value, self.prime, self.exponent)
        if isinstance(value, numbers.Integral):
            return ModPrimePower(int(value), self.prime, self.exponent)
        x = to_rational(value)
        den = int(x.denominator)
        if den % self.prime == 0:
            raise NotDivisible('{} is not {}-integral'
                               .format(rational_str(x), self.prime))
        return ModPrimePower(int(x.numerator) * mod_inverse(den, self.modulus),
                             self.prime, self.exponent)

    reduce = __call__

    @property
    def zero(self):
        return ModPrimePower(0, self.prime, self.exponent)

    @property
    def one(self):
        return ModPrimePower(1, self.prime, self.exponent)

    def to_str(self, c):
        return str(c.value)

    def from_str(self, s):
        return self(int(s))

    def todict(self):
        return {'type': 'residue', 'prime': self.prime,
                'exponent': self.exponent}

    def __eq__(self, other):
        return (isinstance(other, ResidueRing) and
                (self.prime, self.exponent) == (other.prime, other.exponent))

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('residue', self.prime, self.exponent))

    def __repr__(self):
        if self.exponent == 1:
            return 'F_{}'.format(self.prime)
        return 'Z/{}^{}'.format(self.prime, self.exponent)


def domain_from_dict(d):
    if d['type'] == 'QQ':
        return RATIONALS
    return ResidueRing(d['prime'], d['exponent'])


class SeriesRing(object):
    """Parent of truncated weighted series.

    variables: a list of names, or of (name, weight) pairs. Weights
    default to 1.

    degree: bound on the total weighted degree of the positive-weight
    variables, or None for no bound.

    caps: dict name -> largest allowed exponent. Every variable of weight
    <= 0 needs one.

    domain: RATIONALS or a ResidueRing.

    """

    def __init__(self, variables, degree=None, caps=None, domain=RATIONALS):
        names, weights = [], []
        for v in variables:
            if isinstance(v, str):
                names.append(v)
                weights.append(1)
            else:
                names.append(v[0])
                weights.append(int(v[1]))
        if len(set(names)) != len(names):
            raise ValueError('repeated variable names: {}'.format(names))
        caps = dict(caps or {})
        for name in caps:
            if name not in names:
                raise ValueError('cap for unknown variable {}'.format(name))
        for name, w in zip(names, weights):
            if w <= 0 and name not in caps:
                raise ValueError('variable {} of weight {} needs a cap'
                                 .format(name, w))
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.degree = degree
        self.caps = tuple(caps.get(name) for name in names)
        self.domain = domain
        self.index = dict((name, i) for i, name in enumerate(names))
        self.ngens = len(names)
        self._pos_weights = tuple(max(w, 0) for w in weights)
        self._cap_bounds = tuple(sys.maxsize if c is None else c
                                 for c in self.caps)

    # -- truncation --------------------------------------------------
    def weighted_degree(self, exps):
        return sum(w * e for w, e in zip(self._pos_weights, exps))

    def admits(self, exps):
        for e, c in zip(exps, self._cap_bounds):
            if e > c:
                return False
        if self.degree is None:
            return True
        return self.weighted_degree(exps) <= self.degree

    def sort_key(self, exps):
        """Graded lexicographic order on the declared variable order."""
        return (self.weighted_degree(exps), tuple(-e for e in exps))

    def is_nilpotent_in(self, name):
        """True if high enough powers of the variable are truncated away."""
        i = self.index[name]
        return (self.caps[i] is not None or
                (self.degree is not None and self._pos_weights[i] > 0))

    # -- construction ------------------------------------------------
    def zero(self):
        return WeightedSeries(self, {}, _clean=True)

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return WeightedSeries(self, {(0,) * self.ngens: c})

    def gen(self, name):
        exps = [0] * self.ngens
        exps[self.index[name]] = 1
        return WeightedSeries(self, {tuple(exps): 1})

    def gens(self):
        return tuple(self.gen(name) for name in self.names)

    def monomial(self, exponents, coeff=1):
        """Series with one term; exponents is a dict name -> exponent."""
        exps = [0] * self.ngens
        for name, e in exponents.items():
            exps[self.index[name]] = e
        return WeightedSeries(self, {tuple(exps): coeff})

    def __call__(self, x):
        if isinstance(x, WeightedSeries):
            return x.coerce(self)
        return self.constant(x)

    def derive(self, variables=None, degree='keep', caps='keep',
               domain=None):
        """A new ring with some of the data replaced."""
        if variables is None:
            variables = list(zip(self.names, self.weights))
        if degree == 'keep':
            degree = self.degree
        if caps == 'keep':
            caps = dict((n, c) for n, c in zip(self.names, self.caps)
                        if c is not None)
            names = [v if isinstance(v, str) else v[0] for v in variables]
            caps = dict((n, c) for n, c in caps.items() if n in names)
        return SeriesRing(variables, degree=degree, caps=caps,
                          domain=domain or self.domain)

    # -- identity ----------------------------------------------------
    def _key(self):
        return (self.names, self.weights, self.degree, self.caps,
                self.domain)

    def __eq__(self, other):
        return isinstance(other, SeriesRing) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def todict(self):
        return {'variables': list(self.names),
                'weights': list(self.weights),
                'truncation': {'degree': self.degree,
                               'caps': dict((n, c) for n, c in
                                            zip(self.names, self.caps)
                                            if c is not None)},
                'domain': self.domain.todict()}

    def __repr__(self):
        vs = ', '.join('{}:{}'.format(n, w)
                       for n, w in zip(self.names, self.weights))
        caps = ', '.join('{}<={}'.format(n, c)
                         for n, c in zip(self.names, self.caps)
                         if c is not None)
        return 'SeriesRing([{}], D={}, caps=[{}], {!r})'.format(
            vs, self.degree, caps, self.domain)


class WeightedSeries(object):
    """A truncated multivariate polynomial with coefficients in the
    domain of its ring. Immutable; all arithmetic re-truncates."""
    __slots__ = ('ring', 'terms')

    def __init__(self, ring, terms=None, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
            return
        convert = ring.domain
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != ring.ngens:
                raise ValueError('exponent vector {} does not match {} '
                                 'variables'.format(exps, ring.ngens))
            c = convert(c)
            if c != 0 and ring.admits(exps):
                clean[exps] = clean.get(exps, ring.domain.zero) + c
                if clean[exps] == 0:
                    del clean[exps]
        self.terms = clean

    # -- helpers -----------------------------------------------------
    def _new(self, terms):
        return WeightedSeries(self.ring, terms, _clean=True)

    def _operand(self, other):
        if isinstance(other, WeightedSeries):
            if other.ring != self.ring:
                raise IncompatibleRings('{!r} vs {!r}'.format(self.ring,
                                                              other.ring))
            return other
        try:
            return self.ring.constant(other)
        except (TypeError, CoercionFailed, IncompatibleRings, NotDivisible):
            return None

    # -- arithmetic --------------------------------------------------
    def __add__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            s = terms.get(exps)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new(dict((e, -c) for e, c in self.terms.items()))

    def __sub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        if len(other.terms) == 1 and not any(next(iter(other.terms))):
            c = next(iter(other.terms.values()))
            return self._new(dict((e, v * c) for e, v in self.terms.items()
                                  if v * c != 0))
        D = ring.degree
        wdeg = ring.weighted_degree
        caps = ring._cap_bounds
        right = sorted(((wdeg(e), e, c) for e, c in other.terms.items()),
                       key=lambda t: t[0])
        terms = {}
        for ea, ca in self.terms.items():
            da = wdeg(ea)
            for db, eb, cb in right:
                if D is not None and da + db > D:
                    break
                exps = tuple(x + y for x, y in zip(ea, eb))
                if any(e > c for e, c in zip(exps, caps)):
                    continue
                s = terms.get(exps)
                prod = ca * cb
                terms[exps] = prod if s is None else s + prod
        return self._new(dict((e, c) for e, c in terms.items() if c != 0))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, WeightedSeries):
            return NotImplemented
        if isinstance(self.ring.domain, RationalField):
            inv = 1 / to_rational(other)
        else:
            inv = self.ring.domain(other).inverse()
        return self * inv

    def __pow__(self, n):
        if not isinstance(n, numbers.Integral) or n < 0:
            raise ValueError('series powers need an integer >= 0')
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._operand(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    # -- queries -----------------------------------------------------
    def _exps(self, exponents):
        if isinstance(exponents, dict):
            exps = [0] * self.ring.ngens
            for name, e in exponents.items():
                exps[self.ring.index[name]] = e
            return tuple(exps)
        return tuple(exponents)

    def coefficient(self, exponents):
        """Coefficient of a monomial given as a tuple or a name dict."""
        return self.terms.get(self._exps(exponents), self.ring.domain.zero)

    def constant_term(self):
        return self.coefficient((0,) * self.ring.ngens)

    def degree(self):
        if not self.terms:
            return -INFINITY
        return max(self.ring.weighted_degree(e) for e in self.terms)

    def degree_in(self, name):
        i = self.ring.index[name]
        return max([e[i] for e in self.terms] or [0])

    def variables_used(self):
        return tuple(n for i, n in enumerate(self.ring.names)
                     if any(e[i] for e in self.terms))

    def items(self):
        """(exponents, coefficient) pairs in the canonical monomial order."""
        key = self.ring.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def homogeneous_part(self, degree):
        wdeg = self.ring.weighted_degree
        return self._new(dict((e, c) for e, c in self.terms.items()
                              if wdeg(e) == degree))

    def map_coefficients(self, func):
        terms = {}
        for e, c in self.terms.items():
            c = func(c)
            if c != 0:
                terms[e] = c
        return self._new(terms)

    def exact_div(self, p, e):
        """Divide every coefficient by p**e exactly (rational series)."""
        return self.map_coefficients(lambda c: exact_div_p(c, e, p))

    def is_integral(self):
        return all(to_rational(c).denominator == 1
                   for c in self.terms.values())

    # -- change of ring ----------------------------------------------
    def _name_map(self, ring):
        mapping = []
        for i, name in enumerate(self.ring.names):
            if name in ring.index:
                mapping.append(ring.index[name])
            elif any(e[i] for e in self.terms):
                raise IncompatibleRings('variable {} is missing from {!r}'
                                        .format(name, ring))
            else:
                mapping.append(None)
        return mapping

    def coerce(self, ring):
        """The same series in another ring, matched by variable name and
        re-truncated there."""
        if ring == self.ring:
            return self
        mapping = self._name_map(ring)
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * ring.ngens
            for i, e in enumerate(exps):
                if e:
                    new[mapping[i]] = e
            terms[tuple(new)] = c
        return WeightedSeries(ring, terms)

    def substitute(self, bindings, ring=None):
        """Replace variables by series (or scalars) simultaneously.

        bindings: dict name -> WeightedSeries or scalar. All series must
        share one ring, which is the ring of the result unless `ring` is
        given. Unbound variables are carried over by name.

        A truncated variable of positive weight may only be bound to a
        series with zero constant term, otherwise the truncated result
        would depend on terms that were already thrown away. Untruncated
        variables (polynomials) accept anything.
        """
        series_rings = set(b.ring for b in bindings.values()
                           if isinstance(b, WeightedSeries))
        if ring is None:
            if len(series_rings) > 1:
                raise IncompatibleRings('bindings live in several rings')
            ring = series_rings.pop() if series_rings else self.ring
        for name in bindings:
            if name not in self.ring.index:
                raise IncompatibleRings('{} is not a variable of {!r}'
                                        .format(name, self.ring))

        images = []
        for i, name in enumerate(self.ring.names):
            used = any(e[i] for e in self.terms)
            if name in bindings:
                b = bindings[name]
                b = b.coerce(ring) if isinstance(b, WeightedSeries) \
                    else ring.constant(b)
                if used and self.ring.weights[i] > 0 and \
                        self.ring.is_nilpotent_in(name) and \
                        b.constant_term() != 0:
                    raise NonComposable(
                        'cannot substitute a series with constant term {} '
                        'for {}'.format(b.constant_term(), name))
                images.append(b)
            elif name in ring.index:
                images.append(ring.gen(name))
            elif used:
                raise IncompatibleRings('variable {} is missing from {!r}'
                                        .format(name, ring))
            else:
                images.append(None)

        cache = {(0,) * self.ring.ngens: ring.one()}

        def image(exps):
            if exps in cache:
                return cache[exps]
            i = next(j for j, e in enumerate(exps) if e)
            smaller = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            result = image(smaller) * images[i]
            cache[exps] = result
            return result

        acc = {}
        domain = ring.domain
        for exps, c in self.items():
            c = domain(c)
            for e, v in image(exps).terms.items():
                v = v * c
                s = acc.get(e)
                acc[e] = v if s is None else s + v
        return WeightedSeries(ring, dict((e, v) for e, v in acc.items()
                                         if v != 0), _clean=True)

    def evaluate(self, values):
        """Evaluate at scalars: values is a dict name -> scalar.

        Residue values make the whole computation happen in their ring.
        """
        residues = [v for v in values.values()
                    if isinstance(v, ModPrimePower)]
        if isinstance(self.ring.domain, ResidueRing):
            convert = self.ring.domain
        elif residues:
            convert = residues[0].ring()
        else:
            convert = to_rational
        missing = [n for n in self.variables_used() if n not in values]
        if missing:
            raise IncompatibleRings('no values for {}'.format(missing))
        total = convert(0)
        for exps, c in self.terms.items():
            term = convert(c)
            for name, e in zip(self.ring.names, exps):
                if e:
                    term = term * convert(values[name]) ** e
            total = total + term
        return total

    # -- serialization -----------------------------------------------
    def to_text(self):
        """Canonical text: coeff * var1^e1 ... varn^en + ..."""
        if not self.terms:
            return '0'
        parts = []
        to_str = self.ring.domain.to_str
        for exps, c in self.items():
            mono = ' '.join('{}^{}'.format(n, e)
                            for n, e in zip(self.ring.names, exps) if e)
            parts.append(to_str(c) + (' * ' + mono if mono else ''))
        return ' + '.join(parts)

    __str__ = to_text

    def __repr__(self):
        return 'WeightedSeries({})'.format(self.to_text())

    def todict(self):
        d = self.ring.todict()
        to_str = self.ring.domain.to_str
        d['terms'] = [[list(e), to_str(c)] for e, c in self.items()]
        return d

    def to_json(self):
        return json.dumps(self.todict(), sort_keys=True, indent=4)

    @classmethod
    def from_dict(cls, d):
        ring = SeriesRing(list(zip(d['variables'], d['weights'])),
                          degree=d['truncation']['degree'],
                          caps=d['truncation']['caps'],
                          domain=domain_from_dict(d['domain']))
        return cls(ring, dict((tuple(e), ring.domain.from_str(c))
                              for e, c in d['terms']))

    @classmethod
    def from_json(cls, s):
        return cls.from_dict(json.loads(s))


def exp_truncated(f):
    """Sum of f**n / n! up to the truncation of f's ring.

    f must have rational coefficients and zero constant term.
    """
    ring = f.ring
    if not isinstance(ring.domain, RationalField):
        raise InvalidCoefficientRing('exp needs rational coefficients, '
                                     'not {!r}'.format(ring.domain))
    if f.constant_term() != 0:
        raise NonComposable('exp of a series with constant term {}'
                            .format(f.constant_term()))
    for name in f.variables_used():
        if not ring.is_nilpotent_in(name):
            raise NonComposable('exp needs {} to be truncated'.format(name))
    result = ring.one()
    term = ring.one()
    n = 0
    while True:
        n += 1
        term = term * f / n
        if term.is_zero():
            break
        result = result + term
    log.debug('exp_truncated: {} terms after {} powers'.format(len(result),
                                                             n - 1))
    return result


def derivative(f, name):
    """Partial derivative in one variable."""
    i = f.ring.index[name]
    terms = {}
    for exps, c in f.terms.items():
        if exps[i]:
            e = list(exps)
            e[i] -= 1
            terms[tuple(e)] = c * exps[i]
    return WeightedSeries(f.ring, terms)


def is_p_integral(f, p):
    """True if every coefficient of the rational series f is p-integral."""
    if not isinstance(f.ring.domain, RationalField):
        raise InvalidCoefficientRing('p-integrality is a property of '
                                     'rational series')
    return all(int(c.denominator) % p != 0 for c in f.terms.values())


def reduce_series(f, domain):
    """Reduce a p-integral rational series into Z/p^k (same variables)."""
    return f.coerce(f.ring.derive(domain=domain))


def random_series(ring, rng, nterms=5, bound=5, constant=True):
    """A random series with small integer coefficients.

    rng is a numpy RandomState. Exponents are drawn below the truncation
    so most draws survive.
    """
    top = ring.degree if ring.degree is not None else 3
    terms = {}
    for _ in range(nterms):
        exps = []
        for cap in ring.caps:
            hi = min(top, cap) if cap is not None else top
            exps.append(int(rng.randint(0, hi + 1)))
        c = int(rng.randint(-bound, bound + 1))
        if not constant and not any(exps):
            continue
        terms[tuple(exps)] = c
    return WeightedSeries(ring, terms)
