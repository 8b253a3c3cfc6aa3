"""Worked examples: projective space and the two restricted structures on
one-dimensional derivations.

Hodge cohomology of P^n over F_p is F_p[c]/c^(n+1) with c in bidegree
(1, 1). The degeneration of the conjugate spectral sequence at the first
possibly nonzero differential comes down to V(c) = c^p together with the
vanishing Bockstein of a torsion-free lift.

"""
import numpy as np

from .verifier import Verifier, Report
from .monkeypatch import monkeypatch_class
from .liealg import (TruncatedDerivation, truncated_product, leibniz_holds,
                     euler_derivation, d_dx, derivation_pth_power)
from . import linalg, gadual


def chern_power(n, p, k):
    """c^k in F_p[c]/c^(n+1), as a coefficient array."""
    c = np.zeros(n + 1, dtype=np.int64)
    if n >= 1:
        c[1] = 1
    out = np.zeros(n + 1, dtype=np.int64)
    out[0] = 1
    for _ in range(k):
        out = truncated_product(out, c, p)
    return out


def frobenius_operator(n, p):
    """The ring map c -> c^p on F_p[c]/c^(n+1), as a matrix."""
    F = linalg.zeros(n + 1, n + 1)
    for k in range(n + 1):
        F[:, k] = chern_power(n, p, p * k)
    return F


def lifted_bockstein(n, p):
    """The Bockstein H^k -> H^(k+1) of Z[c]/c^(n+1) reduced mod p^2, as a
    matrix on the basis c^0 .. c^n graded by k.

    The lift has free rank one groups and zero differential.
    """
    R = gadual.BaseRing(p, 2)
    C = gadual.ThetaComplex(R, dict((k, 1) for k in range(n + 1)),
                            labels=dict((k, ['c^{}'.format(k)])
                                        for k in range(n + 1)))
    B = linalg.zeros(n + 1, n + 1)
    for k in range(n):
        z = R.zero_vector(1)
        z[0, 0] = 1
        B[k + 1, k] = gadual.bockstein(C, z, k)[0, 0]
    return B


@monkeypatch_class(Verifier)
def _demo_report(self, start):
    """The checks recorded since index start, as a Report."""
    return Report('demo', self.config.todict(), self.records[start:])


@monkeypatch_class(Verifier)
def demo_projective_space(self, n=None, p=None):
    """V(c) = c^p, Bock = 0 and the derivation c -> c^p on H(P^n)."""
    start = len(self.records)
    n = self.config.projective_dim if n is None else n
    primes = self.config.primes if p is None else [p]
    for p in primes:
        tag = 'projective_p{}_n{}'.format(p, n)
        Vc = chern_power(n, p, p)
        vanishes = p > n
        self.check('demo', tag + '_V',
                   'Example (projective space): '
                   'V(c) = c^p, which is zero exactly when p > n',
                   (not Vc.any()) == vanishes,
                   V_c='0' if vanishes else 'c^{}'.format(p),
                   bidegree=[p, p])
        V = frobenius_operator(n, p)
        bock = lifted_bockstein(n, p)
        commutator = np.mod(linalg.matmul(V, bock, p) -
                            linalg.matmul(bock, V, p), p)
        self.check('demo', tag + '_degenerates',
                   'Fact (projective space): H*(P^n, Z) = Z[c]/c^(n+1) is '
                   'torsion-free, so the Bockstein of its Z/p^2 reduction '
                   'vanishes and d_p = [V, Bock] = 0',
                   not bock.any() and not commutator.any(),
                   torsion_free=True, bockstein=bock.tolist(),
                   d_p=commutator.tolist())
        D = TruncatedDerivation(p, n + 1, Vc)
        M = D.matrix()
        c = chern_power(n, p, 1)
        ok = leibniz_holds(M, c, c, p)
        ok = ok and all(np.array_equal(M[:, k], np.mod(k * chern_power(
            n, p, k + p - 1), p)) for k in range(1, n + 1))
        image = dict(('c^{}'.format(k), int(k % p))
                     for k in range(1, n + 1) if M[:, k].any())
        self.check('demo', tag + '_derivation',
                   'Example (projective space): '
                   'c -> c^p extends to the derivation c^k -> k c^(k+p-1)',
                   ok, nonzero=image)
    return self._demo_report(start)


@monkeypatch_class(Verifier)
def demo_gm_restricted(self, p=None):
    """x d/dx is restricted-idempotent and d/dx restricted-nilpotent."""
    start = len(self.records)
    primes = self.config.primes if p is None else [p]
    for p in primes:
        N = 3 * p
        euler = euler_derivation(p, N)
        self.check('demo', 'gm_restricted_p{}'.format(p),
                   'Example (G_m): '
                   'on G_m the invariant derivation x d/dx has '
                   '(x d/dx)^p = x d/dx',
                   derivation_pth_power(euler) == euler, size=N)
        self.check('demo', 'ga_restricted_p{}'.format(p),
                   'Example (G_a): '
                   'on G_a the invariant derivation d/dx has (d/dx)^p = 0',
                   derivation_pth_power(d_dx(p, N)) ==
                   TruncatedDerivation(p, N, [0]), size=N)
    return self._demo_report(start)


@monkeypatch_class(Verifier)
def suite_demo(self):
    """Both demos, for every configured prime."""
    for p in self.config.primes:
        self.demo_projective_space(self.config.projective_dim, p)
        self.demo_gm_restricted(p)

