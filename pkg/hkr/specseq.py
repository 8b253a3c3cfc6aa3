"""Spectral sequences of finitely filtered cochain complexes over F_p.

A filtered complex is stored on an adapted basis: every basis vector of
C^k carries a filtration level q >= 0, and F^q C^k is spanned by the
vectors of level >= q. Pages are indexed from r = 2,

    E_2^{s,t} = H^{s+t} gr^{-t} C,    d_r : E_r^{s,t} -> E_r^{s+r, t-r+1},

so page r here is the page r - 1 of the usual E_1-indexed spectral sequence
of a decreasing filtration. With q = -t, k = s + t and c = r - 1:

    Z(q, c) = F^q C^k  meet  d^-1 F^(q+c) C^(k+1)
    E_r     = Z(q, c) / (Z(q+1, c-1) + d Z(q-c+1, c-1))

and d_r raises the filtration level by c.
"""
import numpy as np

from sympy.ntheory import is_primitive_root as _is_primitive_root

from .exceptions import (InvalidFiltration, MalformedSplitData, NotAComplex,
                         WeightMismatch, NotPrimitiveRoot, IndexOutOfRange)
from .logger import log
from . import linalg


class FilteredComplex(object):
    """A bounded complex of F_p vector spaces with a filtration.

    ranks: dict degree -> dimension.
    differentials: dict degree k -> matrix C^k -> C^(k+1).
    levels: dict degree -> filtration level of each basis vector.
    weights: optional dict degree -> weight class of each basis vector.
    """

    def __init__(self, prime, ranks, differentials=None, levels=None,
                 weights=None, check=True):
        self.prime = prime
        self.ranks = dict((k, int(r)) for k, r in ranks.items())
        self.d = {}
        for k, r in self.ranks.items():
            D = (differentials or {}).get(k)
            if D is None:
                D = linalg.zeros(self.rank(k + 1), r)
            self.d[k] = linalg.mod(D, prime)
        self.levels = dict((k, [int(l) for l in (levels or {}).get(k, [0] * r)])
                           for k, r in self.ranks.items())
        self.weights = None
        if weights is not None:
            self.weights = dict((k, [int(w) for w in weights.get(k, [])])
                                for k in self.ranks)
        self.basis = None
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
        return linalg.zeros(self.rank(k + 1), self.rank(k))

    def level_range(self):
        """(lowest, highest) level in use; (0, -1) for the zero complex."""
        used = [l for ls in self.levels.values() for l in ls]
        if not used:
            return 0, -1
        return min(used), max(used)

    def validate(self):
        p = self.prime
        for k in self.degrees:
            D = self.differential(k)
            if D.shape != (self.rank(k + 1), self.rank(k)):
                raise NotAComplex('d^{} has shape {}, expected {}'.format(
                    k, D.shape, (self.rank(k + 1), self.rank(k))))
            if not linalg.is_zero(np.dot(self.differential(k + 1), D), p):
                raise NotAComplex('d^{} d^{} != 0'.format(k + 1, k))
            levels = self.levels[k]
            if len(levels) != self.rank(k) or any(l < 0 for l in levels):
                raise InvalidFiltration('bad levels in degree {}: {}'
                                        .format(k, levels))
            target = self.levels.get(k + 1, [])
            for a, b in zip(*np.nonzero(D)):
                if target[a] < levels[b]:
                    raise InvalidFiltration(
                        'd^{} lowers the filtration: level {} -> {}'.format(
                            k, levels[b], target[a]))
        if self.weights is not None:
            for k in self.degrees:
                if len(self.weights[k]) != self.rank(k):
                    raise WeightMismatch('{} weights for rank {} in degree {}'
                                         .format(len(self.weights[k]),
                                                 self.rank(k), k))
                D = self.differential(k)
                target = self.weights.get(k + 1, [])
                for a, b in zip(*np.nonzero(D)):
                    if target[a] != self.weights[k][b]:
                        raise WeightMismatch('d^{} does not preserve weights'
                                             .format(k))

    @classmethod
    def from_subspaces(cls, prime, ranks, differentials, subspaces):
        """Build the adapted basis from nested subspaces.

        subspaces[k] = [F^0, F^1, ..., F^N] as column bases, with F^0 all
        of C^k. The differentials are rewritten in the adapted basis, kept
        in `basis` (columns, by degree).
        """
        p = prime
        levels, bases = {}, {}
        for k, r in ranks.items():
            flags = [linalg.mod(F, p) for F in
                     subspaces.get(k, [linalg.identity(r)])]
            if linalg.rank(flags[0], p) != r:
                raise InvalidFiltration('F^0 C^{} is not all of C^{}'
                                        .format(k, k))
            for q in range(len(flags) - 1):
                inner, outer = flags[q + 1], flags[q]
                if inner.shape[1] and (
                        linalg.rank(np.hstack([outer, inner]), p) !=
                        linalg.rank(outer, p)):
                    raise InvalidFiltration('F^{} C^{} is not inside F^{}'
                                            .format(q + 1, k, q))
            span, groups = linalg.zeros(r, 0), []
            for q in range(len(flags) - 1, -1, -1):
                new = linalg.complement_basis(flags[q], span, p)
                groups.append((q, new))
                span = np.hstack([span, new])
            groups.reverse()
            bases[k] = np.hstack([g for _, g in groups]) if groups else \
                linalg.zeros(r, 0)
            levels[k] = [q for q, g in groups for _ in range(g.shape[1])]
        ds = {}
        for k, r in ranks.items():
            D = differentials.get(k)
            if D is None or not r or not ranks.get(k + 1, 0):
                continue
            ds[k] = linalg.matmul(linalg.inverse(bases[k + 1], p),
                                  linalg.matmul(D, bases[k], p), p)
        fc = cls(prime, ranks, ds, levels)
        fc.basis = bases
        return fc

    def window(self, k, lo, hi):
        """Basis indices of C^k with level in [lo, hi]."""
        return [i for i, l in enumerate(self.levels.get(k, []))
                if lo <= l <= hi]

    def graded_differential(self, k):
        """The part of d^k preserving the level, i.e. gr d."""
        D = self.differential(k).copy()
        src, tgt = self.levels.get(k, []), self.levels.get(k + 1, [])
        for a, b in zip(*np.nonzero(D)):
            if tgt[a] != src[b]:
                D[a, b] = 0
        return D

    def is_graded(self):
        return all(np.array_equal(self.differential(k),
                                  self.graded_differential(k))
                   for k in self.degrees)

    def filtration_dims(self, k):
        """dim F^q C^k for q from the lowest level to one past the top."""
        lo, hi = self.level_range()
        return [len(self.window(k, q, hi)) for q in range(lo, hi + 2)]

    def cohomology_dims(self):
        p = self.prime
        return dict((k, self.rank(k) - linalg.rank(self.differential(k), p) -
                     linalg.rank(self.differential(k - 1), p))
                    for k in self.degrees)

    def total_cohomology(self):
        return sum(self.cohomology_dims().values())

    def todict(self):
        d = {'prime': self.prime,
             'ranks': dict((str(k), r) for k, r in self.ranks.items()),
             'levels': dict((str(k), v) for k, v in self.levels.items()),
             'differentials': dict((str(k), A.tolist())
                                   for k, A in self.d.items() if A.any())}
        if self.weights is not None:
            d['weights'] = dict((str(k), v) for k, v in self.weights.items())
        return d


def two_step_complex(p):
    """F_p in degree 0 (level 0) mapping isomorphically to F_p in degree 1
    (level 1)."""
    return FilteredComplex(p, {0: 1, 1: 1}, {0: [[1]]}, {0: [0], 1: [1]})


# -- pages ------------------------------------------------------------

def _span(M, p):
    if M.shape[1] == 0:
        return M
    return linalg.column_basis(M, p)


def _cycles(FC, k, q, shift):
    """Columns spanning {x in F^q C^k : dx in F^(q+shift) C^(k+1)}."""
    p = FC.prime
    n = FC.rank(k)
    cols = [i for i, l in enumerate(FC.levels.get(k, [])) if l >= q]
    E = linalg.zeros(n, len(cols))
    for j, i in enumerate(cols):
        E[i, j] = 1
    low = [i for i, l in enumerate(FC.levels.get(k + 1, []))
           if l < q + shift]
    if not cols or not low:
        return E
    A = FC.differential(k)[np.ix_(low, cols)]
    return linalg.matmul(E, linalg.nullspace(A, p), p)


def _quotient(FC, k, q, r):
    """(representatives, denominator) of E_r at level q, degree k."""
    p = FC.prime
    c = r - 1
    Z = _cycles(FC, k, q, c)
    A = _cycles(FC, k, q + 1, c - 1)
    B = linalg.matmul(FC.differential(k - 1),
                      _cycles(FC, k - 1, q - c + 1, c - 1), p)
    den = _span(np.hstack([A, B]), p)
    return linalg.complement_basis(Z, den, p), den


def _coordinates(Y, reps, den, p):
    """Coefficients of the columns of Y on reps, modulo span(den)."""
    A = np.hstack([reps, den])
    out = linalg.zeros(reps.shape[1], Y.shape[1])
    for j in range(Y.shape[1]):
        x = linalg.solve(A, Y[:, j], p)
        if x is None:
            raise NotAComplex('image does not lie in the target page')
        out[:, j] = x[:reps.shape[1]]
    return out


class PageEntry(object):
    """One group E_r^{s,t}: representatives in C^k and d_r on them."""

    def __init__(self, s, t, reps, d, target):
        self.s = s
        self.t = t
        self.reps = reps
        self.d = d
        self.target = target

    @property
    def degree(self):
        return self.s + self.t

    @property
    def level(self):
        return -self.t

    @property
    def dim(self):
        return self.reps.shape[1]


class SpectralPage(object):

    def __init__(self, r, prime, entries):
        self.r = r
        self.prime = prime
        self.entries = entries

    def bidegrees(self):
        return sorted(self.entries)

    def dim(self, s, t):
        e = self.entries.get((s, t))
        return e.dim if e else 0

    def dims(self):
        return dict((st, e.dim) for st, e in self.entries.items())

    @property
    def total_dim(self):
        return sum(e.dim for e in self.entries.values())

    def differential(self, s, t):
        """Matrix of d_r : E_r^{s,t} -> E_r^{s+r,t-r+1}."""
        e = self.entries.get((s, t))
        if e is None:
            return linalg.zeros(self.dim(s + self.r, t - self.r + 1), 0)
        return e.d

    def d_rank(self, s, t):
        return linalg.rank(self.differential(s, t), self.prime)

    def is_degenerate(self):
        """True if every d_r vanishes."""
        return not any(e.d.any() for e in self.entries.values())

    def todict(self):
        return [{'r': self.r, 's': s, 't': t, 'dim': self.dim(s, t),
                 'd_rank': self.d_rank(s, t)} for s, t in self.bidegrees()]

    def to_text(self):
        lines = ['E_{}'.format(self.r)]
        for s, t in self.bidegrees():
            lines.append('  ({:>3},{:>3})  dim {:>2}  rank d {:>2}'.format(
                s, t, self.dim(s, t), self.d_rank(s, t)))
        return '\n'.join(lines)

    def __repr__(self):
        return 'SpectralPage(r={}, total_dim={})'.format(self.r,
                                                         self.total_dim)


def compute_page(FC, r):
    """E_r with its differentials, directly from the filtration."""
    if r < 2:
        raise IndexOutOfRange('pages start at r = 2, got {}'.format(r))
    p = FC.prime
    lo, hi = FC.level_range()
    groups = {}
    for k in FC.degrees:
        for q in range(lo, hi + 1):
            reps, den = _quotient(FC, k, q, r)
            if reps.shape[1]:
                groups[(k, q)] = (reps, den)
    entries = {}
    for (k, q), (reps, den) in groups.items():
        images = linalg.matmul(FC.differential(k), reps, p)
        target = (k + 1, q + r - 1)
        if target in groups:
            d = _coordinates(images, groups[target][0], groups[target][1], p)
        else:
            d = linalg.zeros(0, reps.shape[1])
        s, t = k + q, -q
        entries[(s, t)] = PageEntry(s, t, reps, d, (s + r, t - r + 1))
    log.debug('E_{}: {} groups, total dim {}'.format(
        r, len(entries), sum(e.dim for e in entries.values())))
    return SpectralPage(r, p, entries)


def initial_page(FC):
    return compute_page(FC, 2)


def turn_page(P, FC):
    """E_(r+1), checked to be the cohomology of (E_r, d_r)."""
    Q = compute_page(FC, P.r + 1)
    r = P.r
    for s, t in set(P.bidegrees()) | set(Q.bidegrees()):
        expected = (P.dim(s, t) - P.d_rank(s, t) -
                    P.d_rank(s - r, t + r - 1))
        if Q.dim(s, t) != expected:
            raise NotAComplex('E_{} at ({}, {}) has dim {}, expected {}'
                              .format(r + 1, s, t, Q.dim(s, t), expected))
    return Q


def infinity_page(FC):
    """The page where every later differential vanishes for degree
    reasons."""
    lo, hi = FC.level_range()
    return compute_page(FC, max(2, hi - lo + 2))


def pages(FC):
    """E_2, E_3, ... up to the infinity page."""
    P = initial_page(FC)
    out = [P]
    last = infinity_page(FC).r
    while P.r < last:
        P = turn_page(P, FC)
        out.append(P)
    return out


def induced_filtration_dims(FC):
    """dim gr^q H^k for the filtration induced on cohomology, keyed like
    the pages by (s, t) = (k + q, -q)."""
    p = FC.prime
    lo, hi = FC.level_range()
    out = {}
    for k in FC.degrees:
        B = _span(FC.differential(k - 1), p)
        b = B.shape[1]
        dims = {}
        for q in range(lo, hi + 2):
            Z = _cycles(FC, k, q, hi - lo + 2)
            dims[q] = linalg.rank(np.hstack([Z, B]), p) - b
        for q in range(lo, hi + 1):
            g = dims[q] - dims[q + 1]
            if g:
                out[(k + q, -q)] = g
    return out


def convergence_holds(FC):
    """E_infinity is gr of H(C) for the induced filtration."""
    E = infinity_page(FC)
    induced = induced_filtration_dims(FC)
    return (dict((st, n) for st, n in E.dims().items() if n) == induced and
            E.total_dim == FC.total_cohomology())


# -- splittings -------------------------------------------------------

class SplitData(object):
    """Splittings F^t/F^(t+n+1) = gr^t + ... + gr^(t+n), one per level t.

    maps[(t, k)] is the square matrix on the basis vectors of C^k with
    level in [t, t+n], sending the graded pieces into the quotient.
    """

    def __init__(self, order, levels, maps):
        if order < 0:
            raise MalformedSplitData('negative order {}'.format(order))
        self.order = order
        self.levels = dict((k, list(v)) for k, v in levels.items())
        self.maps = dict((key, np.asarray(S, dtype=np.int64))
                         for key, S in maps.items())

    def window(self, k, t, order=None):
        n = self.order if order is None else order
        return [i for i, l in enumerate(self.levels.get(k, []))
                if t <= l <= t + n]

    def truncate(self, order):
        """The induced splitting to a smaller order."""
        if not 0 <= order <= self.order:
            raise MalformedSplitData('cannot truncate order {} to {}'
                                     .format(self.order, order))
        maps = {}
        for (t, k), S in self.maps.items():
            small = set(self.window(k, t, order))
            pos = [j for j, i in enumerate(self.window(k, t)) if i in small]
            maps[(t, k)] = S[np.ix_(pos, pos)]
        return SplitData(order, self.levels, maps)


def identity_split(FC, order):
    """The splitting of a direct sum filtration (and candidate for any)."""
    lo, hi = FC.level_range()
    maps = {}
    for t in range(lo, hi + 1):
        for k in FC.degrees:
            maps[(t, k)] = linalg.identity(len(FC.window(k, t, t + order)))
    return SplitData(order, FC.levels, maps)


def _check_shapes(FC, SD):
    for k in FC.degrees:
        if list(SD.levels.get(k, [])) != FC.levels[k]:
            raise MalformedSplitData('levels differ in degree {}'.format(k))
    lo, hi = FC.level_range()
    for t in range(lo, hi + 1):
        for k in FC.degrees:
            n = len(SD.window(k, t))
            S = SD.maps.get((t, k))
            if S is None:
                raise MalformedSplitData('no splitting for t={} in degree {}'
                                         .format(t, k))
            if S.shape != (n, n):
                raise MalformedSplitData('splitting for t={} k={} has shape '
                                         '{}, expected {}'.format(
                                             t, k, S.shape, (n, n)))


def verify_split(FC, SD):
    """True if every map in SD is a filtered chain isomorphism inducing the
    identity on gr, and consecutive levels agree where they overlap."""
    _check_shapes(FC, SD)
    p = FC.prime
    lo, hi = FC.level_range()
    for t in range(lo, hi + 1):
        for k in FC.degrees:
            win = SD.window(k, t)
            S = linalg.mod(SD.maps[(t, k)], p)
            lv = [FC.levels[k][i] for i in win]
            for a in range(len(win)):
                for b in range(len(win)):
                    if lv[a] < lv[b] and S[a, b]:
                        return False
                    if lv[a] == lv[b] and S[a, b] != int(a == b):
                        return False
            win1 = SD.window(k + 1, t)
            if win and win1:
                D = FC.differential(k)[np.ix_(win1, win)]
                G = FC.graded_differential(k)[np.ix_(win1, win)]
                S1 = SD.maps[(t, k + 1)]
                if not np.array_equal(linalg.matmul(D, S, p),
                                      linalg.matmul(S1, G, p)):
                    log.debug('splitting t={} is not a chain map at d^{}'
                              .format(t, k))
                    return False
            if t < hi:
                nxt = SD.window(k, t + 1)
                common = [i for i in win if i in set(nxt)]
                a = [win.index(i) for i in common]
                b = [nxt.index(i) for i in common]
                if not np.array_equal(
                        S[np.ix_(a, a)],
                        linalg.mod(SD.maps[(t + 1, k)], p)[np.ix_(b, b)]):
                    return False
    return True


def split_vanishing_check(FC, SD):
    """d_r = 0 for 2 <= r <= n + 1 when FC is split to order n."""
    if not verify_split(FC, SD):
        raise MalformedSplitData('not a splitting to order {}'
                                 .format(SD.order))
    for r in range(2, SD.order + 2):
        if not compute_page(FC, r).is_degenerate():
            log.warning('d_{} is nonzero on a complex split to order {}'
                        .format(r, SD.order))
            return False
    return True


class ExtensionEdge(object):
    """The maps e : gr^t C^k -> gr^(t+n+1) C^(k+1), in level coordinates.

    sources[(t, k)] and targets[(t, k)] list the basis indices involved.
    """

    def __init__(self, order, maps, sources, targets):
        self.order = order
        self.maps = maps
        self.sources = sources
        self.targets = targets

    def is_zero(self):
        return not any(E.any() for E in self.maps.values())

    def todict(self):
        return dict(('{},{}'.format(t, k), E.tolist())
                    for (t, k), E in sorted(self.maps.items()) if E.any())


def extension_edge(FC, SD):
    """Lift gr^t through the splitting and read off the level t+n+1 part
    of the differential."""
    if not verify_split(FC, SD):
        raise MalformedSplitData('not a splitting to order {}'
                                 .format(SD.order))
    p = FC.prime
    n = SD.order
    lo, hi = FC.level_range()
    maps, sources, targets = {}, {}, {}
    for t in range(lo, hi + 1):
        for k in FC.degrees:
            win = SD.window(k, t)
            src = FC.window(k, t, t)
            tgt = FC.window(k + 1, t + n + 1, t + n + 1)
            S = linalg.mod(SD.maps[(t, k)], p)
            E = linalg.zeros(len(tgt), len(src))
            for col, i in enumerate(src):
                v = linalg.zeros(FC.rank(k), 1)
                v[win, 0] = S[:, win.index(i)]
                w = linalg.matmul(FC.differential(k), v, p)
                E[:, col] = w[tgt, 0]
            maps[(t, k)], sources[(t, k)], targets[(t, k)] = E, src, tgt
    return ExtensionEdge(n, maps, sources, targets)


def edge_on_page(FC, edge, page, s, t):
    """Matrix of H(e) from E^{s,t} to E^{s+r,t-r+1} in the page bases.

    Representatives are compared through their leading components, which
    identify E_(n+2) with the cohomology of gr on a split complex.
    """
    p = FC.prime
    n = edge.order
    entry = page.entries[(s, t)]
    k, q = entry.degree, entry.level
    E = edge.maps[(q, k)]
    src, tgt = edge.sources[(q, k)], edge.targets[(q, k)]
    images = linalg.matmul(E, entry.reps[src], p)
    target = page.entries.get(entry.target)
    if target is not None:
        leads = target.reps[tgt]
    else:
        leads = linalg.zeros(len(tgt), 0)
    below = FC.window(k, q + n + 1, q + n + 1)
    G = FC.graded_differential(k)[np.ix_(tgt, below)]
    return _coordinates(images, leads, G, p)


def edge_matches_page(FC, SD):
    """H(e) = d_(n+2) on every group of E_(n+2)."""
    edge = extension_edge(FC, SD)
    page = compute_page(FC, SD.order + 2)
    for s, t in page.bidegrees():
        if not np.array_equal(edge_on_page(FC, edge, page, s, t),
                              page.differential(s, t)):
            log.warning('H(e) != d_{} at ({}, {})'.format(page.r, s, t))
            return False
    return True


# -- generators -------------------------------------------------------

def _filtered_automorphism(levels, p, rng, allowed=None):
    """Unipotent g with g[a, b] != 0 only when level a > level b."""
    ok = (lambda a, b: True) if allowed is None else allowed
    g = linalg.random_unitriangular(
        len(levels), p, rng,
        allowed=lambda i, j: levels[j] > levels[i] and
        ok(levels[j], levels[i]))
    return g.T.copy()


def _assemble(p, cycles, pairs, rng, conjugate=True, allowed=None,
              weight_of=None):
    """A filtered complex from single vectors and pairs x -> y.

    cycles: (degree, level); pairs: (degree, source level, target level).
    Returns the complex and the automorphisms it was conjugated by.
    """
    slots = {}
    for k, level in cycles:
        slots.setdefault(k, []).append((level, None))
    for n, (k, a, b) in enumerate(pairs):
        slots.setdefault(k, []).append((a, ('src', n)))
        slots.setdefault(k + 1, []).append((b, ('tgt', n)))
    ranks, levels, where = {}, {}, {}
    for k, items in slots.items():
        items = sorted(items, key=lambda item: item[0])
        ranks[k] = len(items)
        levels[k] = [l for l, _ in items]
        for i, (_, tag) in enumerate(items):
            if tag is not None:
                where[tag] = i
    ds = {}
    for n, (k, a, b) in enumerate(pairs):
        if k not in ds:
            ds[k] = linalg.zeros(ranks[k + 1], ranks[k])
        ds[k][where[('tgt', n)], where[('src', n)]] = 1
    gs = {}
    for k in ranks:
        if conjugate:
            gs[k] = _filtered_automorphism(levels[k], p, rng, allowed)
        else:
            gs[k] = linalg.identity(ranks[k])
    for k, D in list(ds.items()):
        ds[k] = linalg.matmul(gs[k + 1],
                              linalg.matmul(D, linalg.inverse(gs[k], p), p),
                              p)
    weights = None
    if weight_of is not None:
        weights = dict((k, [weight_of(l) for l in levels[k]])
                       for k in ranks)
    return FilteredComplex(p, ranks, ds, levels, weights), gs


def random_filtered_complex(p, rng, max_dim=8, max_level=2, degrees=3):
    """A random filtered complex of total dimension at most max_dim."""
    size = int(rng.randint(1, max_dim + 1))
    cycles, pairs, used = [], [], 0
    while used < size:
        if size - used >= 2 and degrees > 1 and rng.randint(0, 3):
            a = int(rng.randint(0, max_level + 1))
            pairs.append((int(rng.randint(0, degrees - 1)), a,
                          int(rng.randint(a, max_level + 1))))
            used += 2
        else:
            cycles.append((int(rng.randint(0, degrees)),
                           int(rng.randint(0, max_level + 1))))
            used += 1
    return _assemble(p, cycles, pairs, rng)[0]


def split_complex(p, n, rng, max_dim=8, conjugate=True):
    """A graded complex plus a perturbation raising the level by exactly
    n + 1, conjugated by a random filtered automorphism.

    Returns (complex, splitting to order n, perturbation pairs).
    """
    max_level = n + 2
    shift = n + 1
    k = int(rng.randint(0, 2))
    a = int(rng.randint(0, max_level - shift + 1))
    perturbation = [(k, a, a + shift)]
    cycles, graded, used = [], [], 2
    size = int(rng.randint(2, max_dim + 1))
    while used < size:
        choice = int(rng.randint(0, 3)) if size - used >= 2 else 0
        if choice == 0:
            cycles.append((int(rng.randint(0, 3)),
                           int(rng.randint(0, max_level + 1))))
            used += 1
        elif choice == 1:
            level = int(rng.randint(0, max_level + 1))
            graded.append((int(rng.randint(0, 2)), level, level))
            used += 2
        else:
            a = int(rng.randint(0, max_level - shift + 1))
            perturbation.append((int(rng.randint(0, 2)), a, a + shift))
            used += 2
    FC, gs = _assemble(p, cycles, graded + perturbation, rng, conjugate)
    lo, hi = FC.level_range()
    maps = {}
    for t in range(lo, hi + 1):
        for k in FC.degrees:
            win = FC.window(k, t, t + n)
            maps[(t, k)] = gs[k][np.ix_(win, win)]
    return FC, SplitData(n, FC.levels, maps), perturbation


def weight_pure_complex(p, m, rng, max_dim=8, max_level=None):
    """A filtered complex whose level-i part has weight class m^i mod p and
    whose differential preserves weights."""
    if not is_primitive_root(m, p):
        raise NotPrimitiveRoot('{} is not a primitive root mod {}'
                               .format(m, p))
    step = p - 1
    if max_level is None:
        max_level = 2 * step
    size = int(rng.randint(1, max_dim + 1))
    cycles, pairs, used = [], [], 0
    while used < size:
        if size - used >= 2 and rng.randint(0, 3):
            a = int(rng.randint(0, max_level + 1))
            jumps = (max_level - a) // step
            b = a + step * int(rng.randint(0, jumps + 1))
            pairs.append((int(rng.randint(0, 2)), a, b))
            used += 2
        else:
            cycles.append((int(rng.randint(0, 3)),
                           int(rng.randint(0, max_level + 1))))
            used += 1
    FC, _ = _assemble(p, cycles, pairs, rng,
                      allowed=lambda a, b: (a - b) % step == 0,
                      weight_of=lambda level: pow(m, level, p))
    return FC


# -- Adams weights ----------------------------------------------------

def is_primitive_root(m, p):
    if m % p == 0:
        return False
    return bool(_is_primitive_root(m % p, p))


def allowed_pages(p, m, r_max):
    """Pages r in 2..r_max whose differential can connect equal weights:
    exactly those with m^(r-1) = 1 mod p, i.e. r = 1 mod p - 1."""
    if not is_primitive_root(m, p):
        raise NotPrimitiveRoot('{} is not a primitive root mod {}'
                               .format(m, p))
    return [r for r in range(2, r_max + 1) if pow(m, r - 1, p) == 1 % p]


def check_weight_purity(FC, m):
    p = FC.prime
    if FC.weights is None:
        raise WeightMismatch('the complex has no weight grading')
    for k in FC.degrees:
        for level, w in zip(FC.levels[k], FC.weights[k]):
            if w % p != pow(m, level, p):
                raise WeightMismatch(
                    'level {} in degree {} has weight {}, expected {}'.format(
                        level, k, w, pow(m, level, p)))


def adams_vanishing_check(FC, m, p=None):
    """Weight-forbidden differentials vanish on the computed pages.

    d_r moves level q to q + r - 1, changing the weight class by m^(r-1);
    when that is not 1 the source and target weights differ and d_r is
    zero on a weight-preserving complex.
    """
    if p is not None and p != FC.prime:
        raise WeightMismatch('weights mod {} on a complex over F_{}'
                             .format(p, FC.prime))
    p = FC.prime
    if not is_primitive_root(m, p):
        raise NotPrimitiveRoot('{} is not a primitive root mod {}'
                               .format(m, p))
    check_weight_purity(FC, m)
    last = infinity_page(FC).r
    allowed = allowed_pages(p, m, last)
    forbidden = [r for r in range(2, last + 1) if r not in allowed]
    nonzero = [P.r for P in pages(FC) if not P.is_degenerate()]
    violations = [r for r in nonzero if r in forbidden]
    if violations:
        log.warning('forbidden differentials are nonzero: {}'
                    .format(violations))
    return {'prime': p, 'm': m, 'allowed': allowed,
            'forbidden': forbidden, 'nonzero': nonzero,
            'violations': violations, 'ok': not violations}
