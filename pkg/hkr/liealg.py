"""Multilinear Lie words, Jacobson's polynomial and restricted structures.

Everything here is over F_p. Multilinear elements of arity p are dicts
from permutations of (1, ..., p) to residues; Lie elements use the
left-normed basis [[..[X_s1, X_s2], ..], X_sp] with s1 = 1, associative
elements use words X_s1 X_s2 ... X_sp.

"""
import itertools
import math

import numpy as np

from sympy import mod_inverse
from sympy.utilities.iterables import multiset_permutations

from .exceptions import (ArityTooLarge, CertificationFailure,
                         NotADerivation)
from .logger import log
from . import linalg

ARITY_CAP = 5


def _check_arity(p):
    if p > ARITY_CAP:
        raise ArityTooLarge('arity {} exceeds the cap {} (Ass({}) has {} '
                            'basis words)'.format(p, ARITY_CAP, p,
                                                  math.factorial(p)))


def _add_into(acc, key, c, p):
    s = (acc.get(key, 0) + c) % p
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _mul_words(a, b, p):
    """Product of two word dicts in the free associative algebra."""
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            _add_into(out, u + v, c * d, p)
    return out


def assoc_bracket(a, b, p):
    """[a, b] = ab - ba on word dicts."""
    out = _mul_words(a, b, p)
    for w, c in _mul_words(b, a, p).items():
        _add_into(out, w, -c, p)
    return out


def _letter(x):
    return {(x,): 1}


class MultilinearAssoc(object):
    """An element of Ass(p): coefficients on the p! words."""

    def __init__(self, arity, prime, coefficients):
        self.arity = arity
        self.prime = prime
        self.coefficients = dict((w, c % prime)
                                 for w, c in coefficients.items()
                                 if c % prime)

    def __eq__(self, other):
        return (isinstance(other, MultilinearAssoc) and
                (self.arity, self.prime) == (other.arity, other.prime) and
                self.coefficients == other.coefficients)

    def __ne__(self, other):
        return not self == other

    def __len__(self):
        return len(self.coefficients)

    def __str__(self):
        if not self.coefficients:
            return '0'
        return ' + '.join('{}*{}'.format(c, ''.join('X{}'.format(i)
                                                    for i in w))
                          for w, c in sorted(self.coefficients.items()))

    __repr__ = __str__


class MultilinearLie(object):
    """An element of Lie(p) in the left-normed basis."""

    def __init__(self, arity, prime, coefficients):
        for s in coefficients:
            if s[0] != 1:
                raise ValueError('left-normed basis words start with X1, '
                                 'not {}'.format(s))
        self.arity = arity
        self.prime = prime
        self.coefficients = dict((s, c % prime)
                                 for s, c in coefficients.items()
                                 if c % prime)

    def __len__(self):
        return len(self.coefficients)

    def bracket_word(self, s):
        """The left-normed bracket on the letters of s, as a word dict."""
        acc = _letter(s[0])
        for x in s[1:]:
            acc = assoc_bracket(acc, _letter(x), self.prime)
        return acc

    def evaluate(self, matrices):
        """Substitute matrices for X1..Xp (mod p)."""
        p = self.prime
        total = linalg.zeros(*matrices[0].shape)
        for s, c in self.coefficients.items():
            acc = matrices[s[0] - 1]
            for x in s[1:]:
                m = matrices[x - 1]
                acc = np.mod(linalg.matmul(acc, m, p) -
                             linalg.matmul(m, acc, p), p)
            total = np.mod(total + c * acc, p)
        return total

    def __str__(self):
        parts = []
        for s, c in sorted(self.coefficients.items()):
            text = 'X{}'.format(s[0])
            for x in s[1:]:
                text = '[{},X{}]'.format(text, x)
            parts.append(text if c == 1 else '{}*{}'.format(c, text))
        return ' + '.join(parts) or '0'

    __repr__ = __str__


def w_element(p):
    """sum over s with s(1) = 1 of [[..[X_s1, X_s2], ..], X_sp]"""
    _check_arity(p)
    coefficients = dict(((1,) + rest, 1)
                        for rest in itertools.permutations(range(2, p + 1)))
    return MultilinearLie(p, p, coefficients)


def norm_element(p):
    """N(X1...Xp) = sum of all p! words."""
    _check_arity(p)
    return MultilinearAssoc(p, p, dict(
        (s, 1) for s in itertools.permutations(range(1, p + 1))))


def lie_to_assoc(e):
    """Expand brackets as commutators."""
    p = e.prime
    out = {}
    for s, c in e.coefficients.items():
        for w, d in e.bracket_word(s).items():
            _add_into(out, w, c * d, p)
    return MultilinearAssoc(e.arity, p, out)


def lie_to_assoc_rank(p):
    """Rank over F_p of the images of the (p-1)! left-normed basis words."""
    _check_arity(p)
    words = list(itertools.permutations(range(1, p + 1)))
    column = dict((w, i) for i, w in enumerate(words))
    basis = [(1,) + r for r in itertools.permutations(range(2, p + 1))]
    M = linalg.zeros(len(basis), len(words))
    for i, s in enumerate(basis):
        image = lie_to_assoc(MultilinearLie(p, p, {s: 1}))
        for w, c in image.coefficients.items():
            M[i, column[w]] = c
    return linalg.rank(M, p)


# -- Jacobson's polynomial --------------------------------------------

class LiePolynomial(object):
    """Right-normed brackets [a1,[a2,..[a_{k-1}, a_k]..]] in letters x, y.

    terms: dict mapping letter tuples to residues mod p.
    """

    def __init__(self, prime, terms):
        self.prime = prime
        self.terms = dict((w, c % prime) for w, c in terms.items()
                          if c % prime)

    def to_assoc(self):
        p = self.prime
        out = {}
        for word, c in self.terms.items():
            acc = _letter(word[-1])
            for a in reversed(word[:-1]):
                acc = assoc_bracket(_letter(a), acc, p)
            for w, d in acc.items():
                _add_into(out, w, c * d, p)
        return out

    def evaluate(self, x, y):
        p = self.prime
        values = {'x': linalg.mod(x, p), 'y': linalg.mod(y, p)}
        total = linalg.zeros(*values['x'].shape)
        for word, c in self.terms.items():
            acc = values[word[-1]]
            for a in reversed(word[:-1]):
                m = values[a]
                acc = np.mod(linalg.matmul(m, acc, p) -
                             linalg.matmul(acc, m, p), p)
            total = np.mod(total + c * acc, p)
        return total

    def __str__(self):
        parts = []
        for word, c in sorted(self.terms.items()):
            text = word[-1]
            for a in reversed(word[:-1]):
                text = '[{},{}]'.format(a, text)
            parts.append(text if c == 1 else '{}*{}'.format(c, text))
        return ' + '.join(parts) or '0'

    __repr__ = __str__


def mixed_words(p):
    """The 2^p - 2 words in x, y of length p using both letters."""
    return [w for w in itertools.product('xy', repeat=p)
            if 'x' in w and 'y' in w]


def jacobson_L(p, certify=True):
    """L(x, y) with (x + y)^p = x^p + y^p + L(x, y).

    L = sum_i s_i where i s_i is the t^(i-1) coefficient of
    ad(t x + y)^(p-1)(x). With certify set the result is checked against
    the expansion of (x + y)^p before it is returned.
    """
    _check_arity(p)
    terms = {}
    for w in itertools.product('xy', repeat=p - 1):
        i = w.count('x') + 1
        # [x, x] = 0 innermost
        if i >= p or w[-1] == 'x':
            continue
        word = w + ('x',)
        terms[word] = (terms.get(word, 0) + mod_inverse(i, p)) % p
    L = LiePolynomial(p, terms)
    if certify and L.to_assoc() != dict((w, 1) for w in mixed_words(p)):
        raise CertificationFailure('Jacobson polynomial for p={} does not '
                                   'expand to the mixed words of (x+y)^p'
                                   .format(p))
    log.debug('L for p={}: {} bracket words'.format(p, len(L.terms)))
    return L


# -- matrix Lie algebras ----------------------------------------------

class MatrixLieElement(object):
    """An element of gl_n(F_p) with bracket [a, b] = ab - ba and
    restriction a^[p] = a^p."""

    def __init__(self, matrix, prime):
        self.prime = prime
        self.matrix = linalg.mod(matrix, prime)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def _wrap(self, m):
        return MatrixLieElement(m, self.prime)

    def __add__(self, other):
        return self._wrap(self.matrix + other.matrix)

    def __sub__(self, other):
        return self._wrap(self.matrix - other.matrix)

    def __mul__(self, c):
        return self._wrap(self.matrix * int(c))

    __rmul__ = __mul__

    def bracket(self, other):
        p = self.prime
        return self._wrap(linalg.matmul(self.matrix, other.matrix, p) -
                          linalg.matmul(other.matrix, self.matrix, p))

    def pth_power(self):
        return self._wrap(linalg.matpow(self.matrix, self.prime, self.prime))

    def ad(self):
        """ad(a) on gl_n as an n^2 x n^2 matrix (row-major vec)."""
        n = self.dim
        I = linalg.identity(n)
        return linalg.mod(np.kron(self.matrix, I) -
                          np.kron(I, self.matrix.T), self.prime)

    def __eq__(self, other):
        return (isinstance(other, MatrixLieElement) and
                np.array_equal(self.matrix, other.matrix))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'MatrixLieElement({}, p={})'.format(self.matrix.tolist(),
                                                   self.prime)


def elementary(n, i, j):
    E = linalg.zeros(n, n)
    E[i, j] = 1
    return E


def basis_matrices(n):
    return [elementary(n, i, j) for i in range(n) for j in range(n)]


class TrialReport(object):
    """Failure counts per identity plus the first few counterexamples."""
    keep = 5

    def __init__(self, identities):
        self.trials = 0
        self.failures = dict((name, 0) for name in identities)
        self.counterexamples = []

    def record(self, name, ok, **data):
        if ok:
            return
        self.failures[name] += 1
        if len(self.counterexamples) < self.keep:
            example = {'identity': name}
            example.update(data)
            self.counterexamples.append(example)

    @property
    def passed(self):
        return not any(self.failures.values())

    def todict(self):
        return {'trials': self.trials,
                'failures': dict(self.failures),
                'counterexamples': list(self.counterexamples)}


def random_lie_element(n, p, rng):
    return MatrixLieElement(linalg.random_matrix(n, n, p, rng), p)


def restricted_checks(n, p, trials, rng):
    """The three restricted Lie algebra identities on random pairs in
    gl_n(F_p); rng is a numpy RandomState."""
    L = jacobson_L(p)
    report = TrialReport(['scalar', 'additivity', 'adjoint'])
    for _ in range(trials):
        x = random_lie_element(n, p, rng)
        y = random_lie_element(n, p, rng)
        c = int(rng.randint(0, p))
        report.trials += 1
        report.record('scalar',
                      (x * c).pth_power() == x.pth_power() * pow(c, p, p),
                      x=x.matrix.tolist(), c=c)
        sum_p = (x + y).pth_power()
        rhs = x.pth_power() + y.pth_power() + \
            MatrixLieElement(L.evaluate(x.matrix, y.matrix), p)
        report.record('additivity', sum_p == rhs,
                      x=x.matrix.tolist(), y=y.matrix.tolist())
        report.record('adjoint',
                      np.array_equal(x.pth_power().ad(),
                                     linalg.matpow(x.ad(), p, p)),
                      x=x.matrix.tolist())
    return report


# -- Gamma^p and the Verschiebung -------------------------------------

def tensor_product_value(factors, p):
    """V on one pure tensor: multiply the factors in order."""
    acc = factors[0]
    for m in factors[1:]:
        acc = linalg.matmul(acc, m, p)
    return acc


def verschiebung_value(tensor, basis, p):
    """V(z) for z a dict from basis-index tuples to residues."""
    n = basis[0].shape[0]
    total = linalg.zeros(n, n)
    for idx, c in tensor.items():
        total = np.mod(total + c * tensor_product_value(
            [basis[i] for i in idx], p), p)
    return total


def iterated_bracket_value(tensor, basis, y, p):
    """z (x) y -> sum c [a1,[a2,..[ap, y]..]] for z = sum c a1 (x) .. (x) ap."""
    n = y.shape[0]
    total = linalg.zeros(n, n)
    for idx, c in tensor.items():
        acc = y
        for i in reversed(idx):
            a = basis[i]
            acc = np.mod(linalg.matmul(a, acc, p) -
                         linalg.matmul(acc, a, p), p)
        total = np.mod(total + c * acc, p)
    return total


def orbit_sum(multiset):
    """The Sigma_p-orbit sum of a basis multiset, as a tensor dict."""
    return dict((tuple(perm), 1)
                for perm in multiset_permutations(sorted(multiset)))


def symmetrize(idx, p):
    """N(b_i1 (x) ... (x) b_ip) = sum over all p! reorderings."""
    out = {}
    for perm in itertools.permutations(idx):
        _add_into(out, tuple(perm), 1, p)
    return out


def tensor_power(x, basis_size, p):
    """x^(x)p for x given by coordinates on the basis."""
    out = {}
    support = [i for i in range(basis_size) if x[i] % p]
    for idx in itertools.product(support, repeat=p):
        c = 1
        for i in idx:
            c = c * x[i] % p
        _add_into(out, idx, c, p)
    return out


def gamma_p_verschiebung_checks(n, p, trials, rng):
    """Both Gamma^p diagrams for gl_n(F_p).

    norm: V(N(x1 (x) .. (x) xp)) equals w(x1, .., xp), on random basis
    monomials.

    bracket: [V(z), y] equals the iterated bracket of z (x) y, on every
    orbit sum of basis multisets and on x^(x)p for random x.
    """
    basis = basis_matrices(n)
    k = len(basis)
    w = w_element(p)
    report = TrialReport(['norm', 'bracket', 'power'])
    for ms in itertools.combinations_with_replacement(range(k), p):
        z = orbit_sum(ms)
        y = linalg.random_matrix(n, n, p, rng)
        lhs = verschiebung_value(z, basis, p)
        lhs = np.mod(linalg.matmul(lhs, y, p) - linalg.matmul(y, lhs, p), p)
        report.record('bracket',
                      np.array_equal(lhs, iterated_bracket_value(z, basis,
                                                                 y, p)),
                      multiset=list(ms))
    for _ in range(trials):
        report.trials += 1
        idx = tuple(int(i) for i in rng.randint(0, k, size=p))
        lhs = verschiebung_value(symmetrize(idx, p), basis, p)
        rhs = w.evaluate([basis[i] for i in idx])
        report.record('norm', np.array_equal(lhs, rhs), monomial=list(idx))

        x = [int(c) for c in rng.randint(0, p, size=k)]
        X = linalg.zeros(n, n)
        for i, c in enumerate(x):
            X = np.mod(X + c * basis[i], p)
        z = tensor_power(x, k, p)
        y = linalg.random_matrix(n, n, p, rng)
        Vz = verschiebung_value(z, basis, p)
        ok = np.array_equal(Vz, linalg.matpow(X, p, p))
        lhs = np.mod(linalg.matmul(Vz, y, p) - linalg.matmul(y, Vz, p), p)
        ok = ok and np.array_equal(lhs, iterated_bracket_value(z, basis,
                                                               y, p))
        report.record('power', ok, x=X.tolist())
    return report


# -- derivations of F_p[x]/x^N ----------------------------------------

def truncated_product(f, g, p):
    """f g in F_p[x]/x^N, coefficient arrays of length N."""
    N = len(f)
    return np.mod(np.convolve(f, g)[:N], p)


class TruncatedDerivation(object):
    """A derivation of F_p[x]/(x^N), given by its value on x."""

    def __init__(self, prime, size, image):
        self.prime = prime
        self.size = size
        image = list(image) + [0] * (size - len(image))
        self.image = linalg.mod(np.array(image[:size]), prime)
        # D(x^N) = N x^(N-1) D(x) must vanish in the quotient
        if (size * int(self.image[0])) % prime:
            raise NotADerivation('x -> {} does not preserve (x^{})'
                                 .format(self.image.tolist(), size))

    def matrix(self):
        """Column k is D(x^k) = k x^(k-1) D(x)."""
        p, N = self.prime, self.size
        M = linalg.zeros(N, N)
        for k in range(1, N):
            col = np.zeros(N, dtype=np.int64)
            col[:N - k + 1] = (k * self.image[:N - k + 1]) % p
            M[k - 1:, k] = col[:N - k + 1]
        return M

    def __call__(self, f):
        return linalg.mod(np.dot(self.matrix(), linalg.mod(f, self.prime)),
                          self.prime)

    def __eq__(self, other):
        return (isinstance(other, TruncatedDerivation) and
                self.prime == other.prime and self.size == other.size and
                np.array_equal(self.image, other.image))

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        terms = ['{}*x^{}'.format(c, i) for i, c in enumerate(self.image)
                 if c]
        return 'TruncatedDerivation(x -> {})'.format(' + '.join(terms) or
                                                     '0')


def euler_derivation(p, size):
    """x d/dx"""
    return TruncatedDerivation(p, size, [0, 1])


def d_dx(p, size):
    return TruncatedDerivation(p, size, [1])


def leibniz_holds(M, f, g, p):
    """M(fg) == M(f) g + f M(g) for an operator matrix M."""
    lhs = np.mod(np.dot(M, truncated_product(f, g, p)), p)
    rhs = np.mod(truncated_product(np.dot(M, f) % p, g, p) +
                 truncated_product(f, np.dot(M, g) % p, p), p)
    return np.array_equal(lhs, rhs)


def derivation_pth_power(xi, p=None):
    """The p-fold composite of xi, checked to be a derivation again."""
    p = p or xi.prime
    N = xi.size
    M = linalg.matpow(xi.matrix(), p, xi.prime)
    x = np.zeros(N, dtype=np.int64)
    if N > 1:
        x[1] = 1
    if not leibniz_holds(M, x, x, xi.prime):
        raise NotADerivation('p-th power of {} fails Leibniz on x*x'
                             .format(xi))
    result = TruncatedDerivation(xi.prime, N, M[:, 1] if N > 1 else [0])
    if not np.array_equal(result.matrix(), M):
        raise NotADerivation('p-th power of {} is not determined by its '
                             'value on x'.format(xi))
    return result
