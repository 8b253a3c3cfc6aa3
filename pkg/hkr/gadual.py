"""Representations of the dual of the additive formal group as theta-modules.

A representation is a free module over R = Z/p^k[lam]/lam^e with a
nilpotent endomorphism theta. RGamma(M) is the two-term complex
[M --theta--> M]; complexes of theta-modules carry theta degreewise.

Matrices over R are numpy int64 arrays of shape (e, rows, cols): entry
[t] is the coefficient of lam^t. Vectors have shape (e, rank).

Conventions:

* the co-Lie complex has dS_i in degree -1 and dT_i in degree 0, with
  D(dS_i) = p dT_{i+1} - lam^(p^i (p-1)) dT_i;
* the dual of a complex has (M^v)^k = Hom(M^-k, R) and differential
  f -> -(-1)^|f| f o d;
* Tot^k of [M -> M] is M^k + M^(k-1) with d(a, b) = (da, theta a - db),
  and tau . f is the element (0, f).

"""
import numpy as np

from .exceptions import (RingMismatch, NotAComplex, LiftNotCocycle,
                         IndexOutOfRange)
from .logger import log
from .ring import SeriesRing, ResidueRing, derivative
from .liealg import TrialReport
from . import linalg
from . import witt

LAMBDA = 'lam'


class BaseRing(object):
    """Z/p^k[lam]/lam^e; e = 1 means no lam."""

    def __init__(self, prime, exponent=1, lambda_order=1):
        if exponent < 1 or lambda_order < 1:
            raise ValueError('exponent and lambda order must be >= 1')
        self.prime = prime
        self.exponent = exponent
        self.lambda_order = lambda_order
        self.modulus = prime ** exponent

    def _key(self):
        return (self.prime, self.exponent, self.lambda_order)

    def __eq__(self, other):
        return isinstance(other, BaseRing) and self._key() == other._key()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        coeffs = ('F_{}'.format(self.prime) if self.exponent == 1 else
                  'Z/{}^{}'.format(self.prime, self.exponent))
        if self.lambda_order == 1:
            return coeffs
        return '{}[lam]/lam^{}'.format(coeffs, self.lambda_order)

    def todict(self):
        return {'prime': self.prime, 'exponent': self.exponent,
                'lambda_order': self.lambda_order}

    # -- related rings -----------------------------------------------
    def mod_p(self):
        return BaseRing(self.prime, 1, self.lambda_order)

    def lambda_zero(self):
        return BaseRing(self.prime, self.exponent, 1)

    def truncated(self, lambda_order):
        return BaseRing(self.prime, self.exponent, lambda_order)

    def convert(self, A, source):
        """Reduce a matrix or vector from `source` (a larger ring)."""
        if (source.prime != self.prime or
                source.exponent < self.exponent or
                source.lambda_order < self.lambda_order):
            raise RingMismatch('cannot map {!r} to {!r}'.format(source, self))
        return np.mod(A[:self.lambda_order], self.modulus)

    # -- construction ------------------------------------------------
    def zeros(self, rows, cols):
        return np.zeros((self.lambda_order, rows, cols), dtype=np.int64)

    def zero_vector(self, rank):
        return np.zeros((self.lambda_order, rank), dtype=np.int64)

    def identity(self, n):
        I = self.zeros(n, n)
        I[0] = linalg.identity(n)
        return I

    def constant(self, entries):
        """A matrix with entries in Z/p^k (no lam)."""
        entries = np.asarray(entries, dtype=np.int64)
        A = self.zeros(*entries.shape)
        A[0] = np.mod(entries, self.modulus)
        return A

    def from_series(self, f):
        """Coefficient array of a series in lam alone."""
        c = np.zeros(self.lambda_order, dtype=np.int64)
        i = f.ring.index[LAMBDA]
        for exps, v in f.terms.items():
            if any(e for j, e in enumerate(exps) if j != i):
                raise RingMismatch('{} involves more than lam'.format(f))
            if exps[i] < self.lambda_order:
                c[exps[i]] = int(ResidueRing(self.prime,
                                             self.exponent)(v).value)
        return c

    # -- arithmetic --------------------------------------------------
    def reduce(self, A):
        return np.mod(A, self.modulus)

    def matmul(self, A, B):
        e = self.lambda_order
        C = np.zeros((e, A.shape[1], B.shape[2]), dtype=np.int64)
        for a in range(e):
            if not A[a].any():
                continue
            for b in range(e - a):
                C[a + b] += np.dot(A[a], B[b])
            C = np.mod(C, self.modulus)
        return C

    def apply(self, A, v):
        return self.matmul(A, v[:, :, None])[:, :, 0]

    def kron(self, A, B):
        e = self.lambda_order
        C = np.zeros((e, A.shape[1] * B.shape[1], A.shape[2] * B.shape[2]),
                     dtype=np.int64)
        for a in range(e):
            for b in range(e - a):
                C[a + b] += np.kron(A[a], B[b])
        return np.mod(C, self.modulus)

    def transpose(self, A):
        return A.transpose(0, 2, 1).copy()

    def is_zero(self, A):
        return not np.mod(A, self.modulus).any()

    def power(self, A, n):
        result = self.identity(A.shape[1])
        for _ in range(n):
            result = self.matmul(result, A)
        return result

    def expand(self, A):
        """The Z/p^k-linear matrix of A on the basis lam^t e_j (index
        t * rank + j)."""
        e, r, c = A.shape
        E = np.zeros((e * r, e * c), dtype=np.int64)
        for t in range(e):
            for s in range(t + 1):
                E[t * r:(t + 1) * r, s * c:(s + 1) * c] = A[t - s]
        return np.mod(E, self.modulus)

    def lift(self, v):
        """Lift a mod-p vector or matrix to representatives in [0, p)."""
        return np.mod(v, self.prime).astype(np.int64)


class FiniteModule(object):
    """A finite Z/p^k-module, as the exponents e of its Z/p^e summands."""

    def __init__(self, prime, invariants):
        self.prime = prime
        self.invariants = tuple(sorted(int(e) for e in invariants if e > 0))

    @classmethod
    def free(cls, base, rank=1):
        return cls(base.prime,
                   [base.exponent] * (base.lambda_order * rank))

    @property
    def length(self):
        """Composition length; the F_p-dimension for vector spaces."""
        return sum(self.invariants)

    @property
    def order(self):
        return self.prime ** self.length

    def __eq__(self, other):
        return (isinstance(other, FiniteModule) and
                self.prime == other.prime and
                self.invariants == other.invariants)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.prime, self.invariants))

    def __repr__(self):
        if not self.invariants:
            return '0'
        return ' + '.join('Z/{}^{}'.format(self.prime, e)
                          for e in self.invariants)


class ThetaModule(object):
    """A free R-module of finite rank with a nilpotent theta."""

    def __init__(self, base, theta, weights=None, labels=None):
        self.base = base
        self.theta = base.reduce(np.asarray(theta, dtype=np.int64))
        self.rank = self.theta.shape[1]
        self.weights = None if weights is None else tuple(weights)
        self.labels = labels
        if not is_nilpotent(base, self.theta):
            raise NotAComplex('theta is not nilpotent')

    def nilpotency_index(self):
        """Smallest j with theta^j = 0."""
        power = self.base.identity(self.rank)
        j = 0
        while not self.base.is_zero(power):
            power = self.base.matmul(power, self.theta)
            j += 1
        return j

    def __repr__(self):
        return 'ThetaModule(rank={}, {!r})'.format(self.rank, self.base)


def is_nilpotent(base, theta):
    E = base.expand(theta)
    n = E.shape[0]
    if n == 0:
        return True
    return linalg.is_zero(linalg.matpow(E, n * base.exponent, base.modulus),
                          base.modulus)


def trivial_module(base, rank=1, weights=None):
    return ThetaModule(base, base.zeros(rank, rank), weights)


def tau_module(base, weights=None):
    """The Jordan block extension of the trivial module by itself."""
    return ThetaModule(base, base.constant([[0, 0], [1, 0]]), weights)


def tensor(M, N):
    """theta = theta_M (x) 1 + 1 (x) theta_N; weights add."""
    if M.base != N.base:
        raise RingMismatch('{!r} vs {!r}'.format(M.base, N.base))
    base = M.base
    theta = (base.kron(M.theta, base.identity(N.rank)) +
             base.kron(base.identity(M.rank), N.theta))
    weights = None
    if M.weights is not None and N.weights is not None:
        weights = [a + b for a in M.weights for b in N.weights]
    return ThetaModule(base, theta, weights)


def cohomology_of_rep(M):
    """(ker theta, coker theta) as finite modules."""
    base = M.base
    E = base.expand(M.theta)
    return (FiniteModule(base.prime,
                         linalg.kernel_invariants(E, base.prime,
                                                  base.exponent)),
            FiniteModule(base.prime,
                         linalg.cokernel_invariants(E, base.prime,
                                                    base.exponent)))


class ThetaComplex(object):
    """A bounded cochain complex of free theta-modules.

    ranks: dict degree -> rank.
    differentials: dict degree k -> matrix M^k -> M^(k+1).
    thetas: dict degree -> theta matrix (zero when missing).
    labels: dict degree -> basis labels.
    """

    def __init__(self, base, ranks, differentials=None, thetas=None,
                 labels=None, check=True):
        self.base = base
        self.ranks = dict((k, r) for k, r in ranks.items())
        self.d = {}
        self.theta = {}
        for k, r in self.ranks.items():
            D = (differentials or {}).get(k)
            if D is None:
                D = base.zeros(self.rank(k + 1), r)
            self.d[k] = base.reduce(np.asarray(D, dtype=np.int64))
            T = (thetas or {}).get(k)
            self.theta[k] = base.zeros(r, r) if T is None else \
                base.reduce(np.asarray(T, dtype=np.int64))
        self.labels = dict((k, list((labels or {}).get(k) or
                                    ['e{}_{}'.format(k, j)
                                     for j in range(r)]))
                           for k, r in self.ranks.items())
        if check:
            self.validate()

    @property
    def degrees(self):
        return sorted(self.ranks)

    def rank(self, k):
        return self.ranks.get(k, 0)

    def differential(self, k):
        if k in self.d:
            return self.d[k]
        return self.base.zeros(self.rank(k + 1), self.rank(k))

    def theta_at(self, k):
        if k in self.theta:
            return self.theta[k]
        return self.base.zeros(self.rank(k), self.rank(k))

    def validate(self):
        base = self.base
        for k in self.degrees:
            D = self.differential(k)
            if D.shape[1:] != (self.rank(k + 1), self.rank(k)):
                raise NotAComplex('d^{} has shape {}, expected {}'.format(
                    k, D.shape[1:], (self.rank(k + 1), self.rank(k))))
            if not base.is_zero(base.matmul(self.differential(k + 1), D)):
                raise NotAComplex('d^{} d^{} != 0'.format(k + 1, k))
            if not base.is_zero(base.matmul(D, self.theta_at(k)) -
                                base.matmul(self.theta_at(k + 1), D)):
                raise NotAComplex('d^{} does not commute with theta'
                                  .format(k))
            if not is_nilpotent(base, self.theta_at(k)):
                raise NotAComplex('theta in degree {} is not nilpotent'
                                  .format(k))

    @classmethod
    def from_module(cls, M, degree=0):
        return cls(M.base, {degree: M.rank}, thetas={degree: M.theta},
                   labels={degree: M.labels})

    # -- change of rings ---------------------------------------------
    def change_base(self, target):
        conv = lambda A: target.convert(A, self.base)
        return ThetaComplex(target, self.ranks,
                            dict((k, conv(A)) for k, A in self.d.items()),
                            dict((k, conv(A)) for k, A in self.theta.items()),
                            self.labels)

    def reduce_mod_p(self):
        return self.change_base(self.base.mod_p())

    def at_lambda_zero(self):
        return self.change_base(self.base.lambda_zero())

    def truncate_lambda(self, lambda_order):
        return self.change_base(self.base.truncated(lambda_order))

    # -- constructions -----------------------------------------------
    def dual(self):
        """Hom(-, R) into the trivial module."""
        base = self.base
        ranks, ds, thetas, labels = {}, {}, {}, {}
        for k in self.degrees:
            j = -k
            ranks[j] = self.rank(k)
            thetas[j] = base.reduce(-base.transpose(self.theta_at(k)))
            labels[j] = [dual_label(s) for s in self.labels[k]]
        for j in ranks:
            k = -j - 1
            sign = -1 if j % 2 == 0 else 1
            ds[j] = base.reduce(sign * base.transpose(self.differential(k)))
        return ThetaComplex(base, ranks, ds, thetas, labels)

    def rgamma(self):
        """The total complex of [M --theta--> M]."""
        base = self.base
        degrees = set(self.degrees) | set(k + 1 for k in self.degrees)
        ranks, ds, labels = {}, {}, {}
        for k in degrees:
            ranks[k] = self.rank(k) + self.rank(k - 1)
            labels[k] = (list(self.labels.get(k, [])) +
                         ['τ' + s for s in self.labels.get(k - 1, [])])
        for k in degrees:
            a, b = self.rank(k), self.rank(k - 1)
            a1 = self.rank(k + 1)
            D = base.zeros(a1 + a, a + b)
            D[:, :a1, :a] = self.differential(k)
            D[:, a1:, :a] = self.theta_at(k)
            D[:, a1:, a:] = -self.differential(k - 1)
            ds[k] = base.reduce(D)
        return ThetaComplex(base, ranks, ds, None, labels)

    # -- cohomology over F_p -----------------------------------------
    def _require_field(self):
        if self.base.exponent != 1:
            raise RingMismatch('cohomology dimensions need F_p coefficients,'
                               ' not {!r}'.format(self.base))

    def cohomology_dim(self, k):
        """F_p-dimension of H^k."""
        self._require_field()
        p = self.base.prime
        n = self.base.lambda_order * self.rank(k)
        if n == 0:
            return 0
        Dk = self.base.expand(self.differential(k))
        Dk1 = self.base.expand(self.differential(k - 1))
        return n - linalg.rank(Dk, p) - linalg.rank(Dk1, p)

    def is_cocycle(self, v, k):
        return self.base.is_zero(self.base.apply(self.differential(k), v))

    def is_coboundary(self, v, k):
        self._require_field()
        p = self.base.prime
        v = np.mod(v, p).reshape(-1)
        if not v.any():
            return True
        if self.rank(k - 1) == 0:
            return False
        return linalg.in_span(self.base.expand(self.differential(k - 1)),
                              v, p)

    def cocycle_basis(self, k):
        """Columns spanning the mod-p cocycles in degree k, as vectors."""
        self._require_field()
        e, r = self.base.lambda_order, self.rank(k)
        N = linalg.nullspace(self.base.expand(self.differential(k)),
                             self.base.prime)
        return [N[:, j].reshape(e, r) for j in range(N.shape[1])]

    def basis_vector(self, k, label):
        try:
            j = self.labels[k].index(label)
        except (KeyError, ValueError):
            raise IndexOutOfRange('no basis element {} in degree {}'
                                  .format(label, k))
        v = self.base.zero_vector(self.rank(k))
        v[0, j] = 1
        return v

    def todict(self):
        return {'base': self.base.todict(),
                'ranks': dict((str(k), r) for k, r in self.ranks.items()),
                'labels': dict((str(k), v) for k, v in self.labels.items()),
                'differentials': dict((str(k), A.tolist())
                                      for k, A in self.d.items()
                                      if A.any())}


def dual_label(s):
    """dT_0 -> ∂_T0, anything else -> ∂(s)."""
    if s.startswith('d') and '_' in s:
        return '∂_' + s[1:].replace('_', '')
    return '∂({})'.format(s)


class ExtClass(object):
    """A class of degree k, represented by a cocycle in a complex.

    Equality is tested modulo coboundaries (over F_p).
    """

    def __init__(self, complex, degree, representative, label=None):
        self.complex = complex
        self.degree = degree
        self.representative = complex.base.reduce(
            np.asarray(representative, dtype=np.int64))
        self.label = label
        C = complex if complex.base.exponent == 1 else complex.reduce_mod_p()
        if not C.is_cocycle(np.mod(self.representative, complex.base.prime),
                            degree):
            raise NotAComplex('{} is not a cocycle'.format(label or
                                                           'representative'))

    def is_zero(self):
        C = self.complex
        if C.base.exponent != 1:
            C = C.reduce_mod_p()
        return C.is_coboundary(self.representative, self.degree)

    def __eq__(self, other):
        if not isinstance(other, ExtClass) or self.degree != other.degree:
            return False
        C = self.complex.reduce_mod_p() if self.complex.base.exponent > 1 \
            else self.complex
        return C.is_coboundary(self.representative - other.representative,
                               self.degree)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'ExtClass(degree={}, {})'.format(self.degree,
                                                self.label or '?')


def tau_class(base):
    """tau in H^1 of RGamma(trivial module)."""
    C = ThetaComplex.from_module(trivial_module(base)).rgamma()
    v = base.zero_vector(C.rank(1))
    v[0, 0] = 1
    return ExtClass(C, 1, v, 'τ')


def connecting_class(M):
    """Extension class of a rank-2 theta-module with sub spanned by e_1
    and quotient spanned by e_0, as a multiple of tau (the lam^0 part)."""
    if M.rank != 2 or M.theta[:, 0, 1].any():
        raise RingMismatch('expected a lower triangular rank 2 module')
    return int(M.theta[0, 1, 0])


# -- the co-Lie complex -----------------------------------------------

def colie_complex(p, n):
    """The co-Lie complex dS_i -> dT_i over Z/p^2[lam]/lam^p.

    The p dT_{i+1} part is the linear part of F_i at T = 0; the lam part is
    the linear part of the Witt product with [lam^(p-1)].
    """
    base = BaseRing(p, 2, p)
    sys = witt.build_system(p, n)
    names = [witt.var('T', j) for j in range(n)]
    D = base.zeros(n, n)

    linear = SeriesRing([witt.var('T', j) for j in range(n + 1)], degree=1)
    for i in range(n):
        Fi = sys.frobenius_polys[i].coerce(linear)
        for j, name in enumerate(names):
            c = Fi.coefficient({name: 1})
            D[0, j, i] += int(c.numerator) // int(c.denominator)

    ring = SeriesRing(names + [(LAMBDA, -1)], degree=1,
                      caps={LAMBDA: p - 1}, domain=ResidueRing(p, 2))
    lam = ring.gen(LAMBDA)
    lift = witt.teichmuller(lam ** (p - 1), p, n)
    T = witt.symbolic_vector(p, n, 'T', ring)
    product = witt.witt_mul(sys, lift, T)
    il = ring.index[LAMBDA]
    for i in range(n):
        for exps, c in product[i].terms.items():
            t_exps = [e for k, e in enumerate(exps) if k != il]
            if sum(t_exps) != 1:
                continue
            j = t_exps.index(1)
            D[exps[il], j, i] -= c.value
    log.debug('co-Lie differential p={} n={}: {}'.format(p, n, D.tolist()))
    return ThetaComplex(base, {-1: n, 0: n}, {-1: base.reduce(D)},
                        labels={-1: ['dS_{}'.format(i) for i in range(n)],
                                0: ['dT_{}'.format(i) for i in range(n)]})


def expected_colie_differential(p, n):
    """p dT_{i+1} - lam^(p^i (p-1)) dT_i, truncated."""
    base = BaseRing(p, 2, p)
    D = base.zeros(n, n)
    for i in range(n):
        if i + 1 < n:
            D[0, i + 1, i] += p
        t = p ** i * (p - 1)
        if t < p:
            D[t, i, i] -= 1
    return base.reduce(D)


def colie_bockstein_holds(p, n):
    """Bock(dS_i) = dT_{i+1} (zero for i = n-1) and Bock(dT_i) = 0 on the
    co-Lie complex at lam = 0."""
    C = colie_complex(p, n).at_lambda_zero()
    for i in range(n):
        b = bockstein(C, C.basis_vector(-1, 'dS_{}'.format(i)), -1)
        expected = (C.basis_vector(0, 'dT_{}'.format(i + 1)) if i + 1 < n
                    else C.base.zero_vector(n))
        if not np.array_equal(b, np.mod(expected, p)):
            log.debug('Bock(dS_{}) = {}'.format(i, b.tolist()))
            return False
        if bockstein(C, C.basis_vector(0, 'dT_{}'.format(i)), 0).any():
            return False
    return True


# -- Bocksteins -------------------------------------------------------

def bockstein(C, z, degree, lift=None):
    """Bockstein of a mod-p cocycle z of C (a complex over Z/p^2 ...).

    The lift defaults to representatives in [0, p). Returns the mod-p
    vector d(lift) / p in degree + 1.
    """
    base = C.base
    if base.exponent != 2:
        raise RingMismatch('Bocksteins need Z/p^2 coefficients, not {!r}'
                           .format(base))
    p = base.prime
    zt = base.lift(z) if lift is None else base.reduce(lift)
    if np.mod(zt - np.asarray(z), p).any():
        raise LiftNotCocycle('lift does not reduce to the given vector')
    dz = base.apply(C.differential(degree), zt)
    if np.mod(dz, p).any():
        raise LiftNotCocycle('{} is not a cocycle mod {}'
                             .format(np.asarray(z).tolist(), p))
    return np.mod(dz // p, p)


def bockstein_lift_independent(C, z, degree, rng):
    """Two lifts of z give cohomologous Bocksteins."""
    p = C.base.prime
    other = C.base.lift(z) + p * rng.randint(0, p, size=np.shape(z))
    a = bockstein(C, z, degree)
    b = bockstein(C, z, degree, lift=other)
    return C.reduce_mod_p().is_coboundary(a - b, degree + 1)


def _sign(k):
    """(-1)^k as an int, negative k included."""
    return -1 if k % 2 else 1


def _blocks(layout, k):
    return layout.get(k, [])


def tensor_complex(M, N):
    """M (x) N with d(a (x) b) = da (x) b + (-1)^|a| a (x) db.

    Returns (complex, layout) where layout[k] lists (i, offset, size) for
    the summand M^i (x) N^(k-i).
    """
    if M.base != N.base:
        raise RingMismatch('{!r} vs {!r}'.format(M.base, N.base))
    base = M.base
    layout, ranks = {}, {}
    for i in M.degrees:
        for j in N.degrees:
            k = i + j
            size = M.rank(i) * N.rank(j)
            offset = ranks.get(k, 0)
            layout.setdefault(k, []).append((i, offset, size))
            ranks[k] = offset + size
    ds = {}
    for k in ranks:
        D = base.zeros(ranks.get(k + 1, 0), ranks[k])
        target = dict((i, off) for i, off, _ in _blocks(layout, k + 1))
        for i, off, size in layout[k]:
            j = k - i
            if i + 1 in target:
                blk = base.kron(M.differential(i), base.identity(N.rank(j)))
                t = target[i + 1]
                D[:, t:t + blk.shape[1], off:off + size] += blk
            if i in target:
                blk = base.kron(base.identity(M.rank(i)), N.differential(j))
                t = target[i]
                D[:, t:t + blk.shape[1], off:off + size] += \
                    _sign(i) * blk
        ds[k] = base.reduce(D)
    thetas = {}
    for k in ranks:
        T = base.zeros(ranks[k], ranks[k])
        for i, off, size in layout[k]:
            j = k - i
            T[:, off:off + size, off:off + size] = (
                base.kron(M.theta_at(i), base.identity(N.rank(j))) +
                base.kron(base.identity(M.rank(i)), N.theta_at(j)))
        thetas[k] = base.reduce(T)
    return ThetaComplex(base, ranks, ds, thetas), layout


def tensor_vector(C, layout, i, j, x, y):
    """x (x) y placed in degree i + j of a tensor complex."""
    base = C.base
    k = i + j
    out = base.zero_vector(C.rank(k))
    for ii, off, size in _blocks(layout, k):
        if ii == i and size:
            v = base.kron(x[:, :, None], y[:, :, None])[:, :, 0]
            out[:, off:off + size] = v
    return out


def hom_complex(M, N):
    """Hom(M, N) with (d f) = d_N f - (-1)^|f| f d_M.

    layout[k] lists (i, offset, size) for the summand Hom(M^i, N^(i+k)),
    stored row-major.
    """
    if M.base != N.base:
        raise RingMismatch('{!r} vs {!r}'.format(M.base, N.base))
    base = M.base
    layout, ranks = {}, {}
    for i in M.degrees:
        for j in N.degrees:
            k = j - i
            size = N.rank(j) * M.rank(i)
            offset = ranks.get(k, 0)
            layout.setdefault(k, []).append((i, offset, size))
            ranks[k] = offset + size
    ds = {}
    for k in ranks:
        D = base.zeros(ranks.get(k + 1, 0), ranks[k])
        target = dict((i, off) for i, off, _ in _blocks(layout, k + 1))
        for i, off, size in layout[k]:
            if i in target:
                blk = base.kron(N.differential(i + k),
                                base.identity(M.rank(i)))
                t = target[i]
                D[:, t:t + blk.shape[1], off:off + size] += blk
            if i - 1 in target:
                blk = base.kron(base.identity(N.rank(i + k)),
                                base.transpose(M.differential(i - 1)))
                t = target[i - 1]
                D[:, t:t + blk.shape[1], off:off + size] -= \
                    _sign(k) * blk
        ds[k] = base.reduce(D)
    return ThetaComplex(base, ranks, ds), layout


def hom_apply(H, layout, M, N, k, f, i, x):
    """f(x) for f in Hom^k and x in M^i; lands in N^(i+k)."""
    base = H.base
    for ii, off, size in _blocks(layout, k):
        if ii == i:
            F = f[:, off:off + size].reshape(base.lambda_order,
                                             N.rank(i + k), M.rank(i))
            return base.apply(F, x)
    return base.zero_vector(N.rank(i + k))


def random_two_term(base, rng, max_rank=3):
    """[M^0 -> M^1] with random ranks in 1..max_rank and a random d."""
    r0 = int(rng.randint(1, max_rank + 1))
    r1 = int(rng.randint(1, max_rank + 1))
    D = base.zeros(r1, r0)
    D[0] = rng.randint(0, base.modulus, size=(r1, r0))
    return ThetaComplex(base, {0: r0, 1: r1}, {0: D})


def random_cocycle(C, k, rng):
    """A random mod-p cocycle of C in degree k."""
    Cp = C.reduce_mod_p()
    basis = Cp.cocycle_basis(k)
    v = C.base.zero_vector(C.rank(k))
    for b in basis:
        v = v + int(rng.randint(0, C.base.prime)) * b
    return np.mod(v, C.base.prime)


def _bock_or_zero(C, z, k):
    if C.rank(k) == 0:
        return C.base.zero_vector(C.rank(k + 1))
    return bockstein(C, z, k)


def bockstein_leibniz_check(p, trials, rng, max_rank=3):
    """The tensor and Hom Leibniz rules for Bocksteins on random two-term
    complexes over Z/p^2, compared on cohomology."""
    base = BaseRing(p, 2)
    report = TrialReport(['tensor', 'hom'])
    for _ in range(trials):
        report.trials += 1
        M = random_two_term(base, rng, max_rank)
        N = random_two_term(base, rng, max_rank)

        T, tl = tensor_complex(M, N)
        i, j = int(rng.randint(0, 2)), int(rng.randint(0, 2))
        x = random_cocycle(M, i, rng)
        y = random_cocycle(N, j, rng)
        lhs = bockstein(T, tensor_vector(T, tl, i, j, x, y), i + j)
        bx = _bock_or_zero(M, x, i)
        by = _bock_or_zero(N, y, j)
        rhs = (tensor_vector(T, tl, i + 1, j, bx, y) +
               _sign(i) * tensor_vector(T, tl, i, j + 1, x, by))
        report.record('tensor',
                      T.reduce_mod_p().is_coboundary(lhs - rhs, i + j + 1),
                      degrees=[i, j])

        H, hl = hom_complex(M, N)
        k = int(rng.randint(-1, 2))
        f = random_cocycle(H, k, rng)
        sources = [ii for ii in (0, 1) if N.rank(ii + k)]
        if not sources:
            continue
        i = sources[int(rng.randint(0, len(sources)))]
        x = random_cocycle(M, i, rng)
        bf = bockstein(H, f, k)
        lhs = hom_apply(H, hl, M, N, k + 1, bf, i, x)
        fx = hom_apply(H, hl, M, N, k, f, i, x)
        rhs = _bock_or_zero(N, fx, i + k)
        bx = _bock_or_zero(M, x, i)
        if M.rank(i + 1):
            rhs = rhs - _sign(k) * hom_apply(H, hl, M, N, k, f, i + 1, bx)
        report.record('hom',
                      N.reduce_mod_p().is_coboundary(lhs - rhs, i + k + 1),
                      degree=k, source=i)
    return report


# -- Ext and the deformation class ------------------------------------

def ext_complex(p, n):
    """RGamma of the dual co-Lie complex modulo (p, lam)."""
    C = colie_complex(p, n).at_lambda_zero().reduce_mod_p()
    return C.dual().rgamma()


def ext_table(p, n, top=3):
    """Ext^k(co-Lie, F_p) for k = 0..top: ranks and basis labels."""
    C = colie_complex(p, n).at_lambda_zero().reduce_mod_p()
    if any(A.any() for A in C.d.values()):
        raise NotAComplex('co-Lie differential is nonzero mod (p, lam)')
    R = C.dual().rgamma()
    table = {}
    for k in range(top + 1):
        table[k] = {'rank': R.cohomology_dim(k),
                    'basis': list(R.labels.get(k, []))}
    return table


def pairing(p, n):
    """Matrix of the dual basis evaluated on dT_j."""
    C = colie_complex(p, n).at_lambda_zero().reduce_mod_p()
    Cv = C.dual()
    P = linalg.zeros(n, n)
    for i, label in enumerate(Cv.labels[0]):
        f = Cv.basis_vector(0, label)
        for j in range(n):
            x = C.basis_vector(0, 'dT_{}'.format(j))
            P[i, j] = int(np.dot(f[0], x[0]) % p)
    return P


def _dual_rgamma_z(p, n):
    """RGamma of the dual co-Lie complex at lam = 0 over Z/p^2."""
    return colie_complex(p, n).at_lambda_zero().dual().rgamma()


def bockstein_of_label(p, n, label, degree):
    R = _dual_rgamma_z(p, n)
    z = R.basis_vector(degree, label)
    return ExtClass(R, degree + 1, np.mod(bockstein(R, z, degree), p),
                    'Bock({})'.format(label))


def named_class(p, n, label, degree):
    R = _dual_rgamma_z(p, n)
    return ExtClass(R, degree, R.basis_vector(degree, label), label)


def jordan_block_derivative():
    """d/dT_0 of [[1, 0], [T_0, 1]], which should be theta_tau."""
    ring = SeriesRing(['T_0'])
    T0 = ring.gen('T_0')
    block = [[ring.one(), ring.zero()], [T0, ring.one()]]
    return [[int(derivative(f, 'T_0').constant_term().numerator) for f in row]
            for row in block]


def lifted_teichmuller_negative(p, n):
    """-[lam^(p-1)] T modulo lam^p, as a Witt vector of series."""
    sys = witt.build_system(p, n)
    ring = SeriesRing([witt.var('T', j) for j in range(n)] + [(LAMBDA, -1)],
                      caps={LAMBDA: p - 1})
    T = witt.symbolic_vector(p, n, 'T', ring)
    lam = ring.gen(LAMBDA)
    return witt.witt_neg(sys, witt.teichmuller_action(lam ** (p - 1), T))


def deformation_class(p, n):
    """The deformation class as a multiple of lam^(p-1) tau∂_S0.

    Computed from Witt data: the lam^(p-1) coefficient of D on dS_0 -> dT_0
    together with the Jordan block derivative theta_tau.

    Modulo (p, lam^p) the lam part of D(dS_i) is lam^(p^i (p-1)) dT_i,
    which survives only for i = 0. So D[p-1, 0, 0] is the whole obstruction:
    it is the linear part of -[lam^(p-1)]T = (-lam^(p-1) T_0, 0, ...), and
    since d/dT_0 of the Jordan block is theta_tau it is the coefficient of
    lam^(p-1) tau∂_S0.
    """
    if n < 2:
        raise IndexOutOfRange('the deformation class needs n >= 2')
    neg = lifted_teichmuller_negative(p, n)
    ring = neg[0].ring
    T0, lam = ring.gen('T_0'), ring.gen(LAMBDA)
    expected = [-(lam ** (p - 1)) * T0] + [ring.zero()] * (n - 1)
    if list(neg.coordinates) != expected:
        raise NotAComplex('-[lam^(p-1)]T is not (-lam^(p-1) T_0, 0, ...) '
                          'mod lam^p')
    if jordan_block_derivative() != [[0, 0], [1, 0]]:
        raise NotAComplex('Jordan block derivative is not theta_tau')
    D = colie_complex(p, n).differential(-1)
    c = int(D[p - 1, 0, 0]) % p
    return {'coefficient': c, 'lambda_power': p - 1, 'class': 'τ∂_S0'}


def deformation_class_check(p, n):
    """tau∂_S0 == Bock(tau∂_T1), with Bock(tau) = 0 and
    Bock(∂_T1) = -∂_S0 along the way."""
    if n < 2:
        raise IndexOutOfRange('the deformation class needs n >= 2')
    if not bockstein_of_label(p, n, 'τ∂_T1', 1) == \
            named_class(p, n, 'τ∂_S0', 2):
        return False
    base = BaseRing(p, 2)
    tau = tau_class(base)
    C = tau.complex
    if bockstein(C, tau.representative, 1).any():
        return False
    R = _dual_rgamma_z(p, n)
    b = bockstein(R, R.basis_vector(0, '∂_T1'), 0)
    target = np.mod(-R.basis_vector(1, '∂_S0'), p)
    if not R.reduce_mod_p().is_coboundary(b - target, 1):
        return False
    first = deformation_class(p, n)
    return first['coefficient'] == p - 1
