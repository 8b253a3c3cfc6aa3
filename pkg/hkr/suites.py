"""The verification suites, monkeypatched onto Verifier.

Each suite_<name> method records its checks through Verifier.check, one
per prime in the config where the statement depends on p. Check names end
in _p<prime> so that reports for several primes do not collide.

"""
from math import factorial

import numpy as np

from sympy.ntheory import primitive_root

from .verifier import Verifier
from .monkeypatch import monkeypatch_class
from .logger import log
from .ring import ModPrimePower, is_p_integral
from .exceptions import CertificationFailure
from . import witt, fgl, liealg, gadual, specseq


AH_DEGREE = 30


def _name(name, p):
    return '{}_p{}'.format(name, p)


# -- Witt vectors -----------------------------------------------------

@monkeypatch_class(Verifier)
def suite_witt(self):
    """Witt polynomials, their ghost identities, F, V and the
    Sekiguchi-Suwa recursion."""
    for p in self.config.primes:
        n = self.config.witt_length_for(p)
        sys = witt.build_system(p, n)
        idx = range(n)
        self.check('witt', _name('ghost_sum', p),
                   'Theorem (ghost map): '
                   'ghost components of the Witt sum are the sums of '
                   'ghost components',
                   all(sys.sum_ghost_identity(i) for i in idx), length=n)
        self.check('witt', _name('ghost_product', p),
                   'Theorem (ghost map): '
                   'ghost components of the Witt product are the products '
                   'of ghost components',
                   all(sys.product_ghost_identity(i) for i in idx), length=n)
        self.check('witt', _name('ghost_frobenius', p),
                   'Theorem (ghost map): '
                   'the i-th ghost component of F(T) is the (i+1)-st ghost '
                   'component of T',
                   all(sys.frobenius_ghost_identity(i) for i in idx),
                   length=n)
        self.check('witt', _name('integrality', p),
                   'Theorem (Witt polynomials): '
                   'sum, product and Frobenius polynomials have integer '
                   'coefficients',
                   sys.is_integral(),
                   terms=[len(q) for q in sys.sum_polys])
        self.check('witt', _name('frobenius_congruence', p),
                   'Lemma (Witt Frobenius): '
                   'F_i is congruent to T_i^p modulo p',
                   all(sys.frobenius_congruence(i) for i in idx))
        self._witt_examples(p)
        self._witt_vectors(p, sys)
        self._sekiguchi_suwa(p, n)


@monkeypatch_class(Verifier)
def _witt_examples(self, p):
    """The small polynomials everyone writes down by hand."""
    sys = witt.build_system(p, 2)
    ring = sys.xy_ring
    X0, X1 = ring.gen('X_0'), ring.gen('X_1')
    Y0, Y1 = ring.gen('Y_0'), ring.gen('Y_1')
    cross = ring.zero()
    for k in range(1, p):
        c = factorial(p) // (factorial(k) * factorial(p - k)) // p
        cross = cross + X0 ** k * Y0 ** (p - k) * c
    expected = X1 + Y1 - cross
    self.check('witt', _name('first_sum_polynomial', p),
               'Example (Witt sum): '
               'S_1 = X_1 + Y_1 - sum_k C(p,k)/p X_0^k Y_0^(p-k)',
               sys.sum_polys[1] == expected, S_1=sys.sum_polys[1].to_text())
    if p in (2, 3):
        G = witt.sekiguchi_suwa_G(p, 1, 2)
        T = dict((n, G.ring.gen(n)) for n in G.ring.names)
        if p == 2:
            want = T['T_2'] - T['T_0'] ** 2 * T['T_1'] - T['T_1'] ** 2
        else:
            want = (T['T_2'] - T['T_0'] ** 6 * T['T_1'] -
                    T['T_0'] ** 3 * T['T_1'] ** 2 * 3 - T['T_1'] ** 3 * 3)
        self.check('witt', _name('second_sekiguchi_suwa_polynomial', p),
                   'Example (Sekiguchi-Suwa polynomials): '
                   'G_1 in closed form', G == want, G_1=G.to_text())


@monkeypatch_class(Verifier)
def _witt_vectors(self, p, sys):
    """F V = p and the Teichmuller action on random vectors over Z/p^k."""
    rng = self.rng('witt', p)
    n = sys.length
    fv_bad, teich_bad = [], []
    for _ in range(self.config.trials):
        k = int(rng.randint(1, 4))
        x = witt.random_vector(p, n, k, rng)
        lhs = witt.frobenius(sys, witt.verschiebung(x))
        rhs = witt.witt_multiple(sys, x, p).truncate(n - 1)
        if lhs != rhs and len(fv_bad) < 3:
            fv_bad.append([c.value for c in x])
        a = ModPrimePower(int(rng.randint(0, p ** k)), p, k)
        acted = witt.teichmuller_action(a, x)
        ghosts = witt.ghost_components(acted)
        scaled = tuple(a ** (p ** i) * g
                       for i, g in enumerate(witt.ghost_components(x)))
        product = witt.witt_mul(sys, witt.teichmuller(a, p, n), x)
        if (ghosts != scaled or product != acted) and len(teich_bad) < 3:
            teich_bad.append({'a': a.value, 'x': [c.value for c in x]})
    self.check('witt', _name('frobenius_verschiebung', p),
               'Lemma (Frobenius and Verschiebung): '
               'F(V(x)) = p x on random vectors over Z/p^k',
               not fv_bad, trials=self.config.trials, counterexamples=fv_bad)
    self.check('witt', _name('teichmuller', p),
               'Lemma (Teichmuller action): '
               '[a] x has coordinates a^(p^i) x_i and ghost components '
               'a^(p^i) Phi_i(x)',
               not teich_bad, trials=self.config.trials,
               counterexamples=teich_bad)


@monkeypatch_class(Verifier)
def _sekiguchi_suwa(self, p, n):
    rows = []
    for i in range(n):
        G = witt.sekiguchi_suwa_G(p, i, n)
        row = {'i': i,
               'terms': len(G),
               'integral': G.is_integral(),
               'mod_p': witt.recursion_holds_mod_p(p, i, n),
               'exact': witt.exact_recursion_holds(p, i, n),
               'differential': witt.differential_at_origin_holds(p, i, n)}
        if p == 2 and i <= 1:
            row['displayed_exactly'] = witt.recursion_holds_exactly(p, i, n)
        rows.append(row)
    self.check('witt', _name('sekiguchi_suwa_integral', p),
               'Lemma (Sekiguchi-Suwa polynomials): '
               'G_i = (F_i - T_i^p)/p has integer coefficients',
               all(r['integral'] for r in rows), rows=rows)
    self.check('witt', _name('sekiguchi_suwa_recursion', p),
               'Lemma (Sekiguchi-Suwa polynomials): '
               'G_i satisfies the recursion modulo p and its binomial '
               'expansion exactly',
               all(r['mod_p'] and r['exact'] and
                   r.get('displayed_exactly', True) for r in rows))
    self.check('witt', _name('sekiguchi_suwa_differential', p),
               'Lemma (Sekiguchi-Suwa polynomials): '
               'dG_i at the origin is dT_(i+1) modulo p',
               all(r['differential'] for r in rows))


# -- formal group laws ------------------------------------------------

@monkeypatch_class(Verifier)
def suite_fgl(self):
    """Formal group laws, the truncated exponential and Psi."""
    D = self.config.degree_t
    ring = fgl.law_ring(D, 4)
    laws = [fgl.additive_law(ring), fgl.multiplicative_law(ring),
            fgl.g_lambda(ring=ring)]
    self.check('fgl', 'laws_valid',
               'Definition (formal group laws): '
               'G_a, G_m and G_lam are formal group laws',
               all(fgl.validate_fgl(F) for F in laws),
               laws=[F.name for F in laws])
    self.check('fgl', 'specialization',
               'Example (deformation of G_a to G_m): '
               'G_lam at lam = 0 is G_a and at lam = 1 is G_m',
               fgl.specialize(laws[2], 0).law ==
               fgl.specialize(fgl.additive_law(ring), 0).law and
               fgl.specialize(laws[2], 1).law ==
               fgl.specialize(laws[1], 0).law)
    if D >= 4:
        rng = self.rng('fgl')
        caught = 0
        trials = self.config.trials
        for _ in range(trials):
            F = fgl.random_perturbation(laws[0], rng)
            caught += not fgl.validate_fgl(F)
        self.check('fgl', 'perturbations_rejected',
                   'Definition (formal group laws): '
                   'random non-associative perturbations of G_a are not '
                   'formal group laws',
                   caught == trials, trials=trials, rejected=caught)
    for p in self.config.primes:
        self._exponential(p)
        self._psi(p)
        self._height(p)


@monkeypatch_class(Verifier)
def _exponential(self, p):
    D = max(self.config.degree_t, 2 * p)
    ring = fgl.law_ring(D, p)
    E = fgl.truncated_exponential(p, ring)
    Ga, G = fgl.additive_law(ring), fgl.g_lambda(ring=ring)
    below = fgl.is_homomorphism(E, Ga, G, p - 1, D)
    at = fgl.is_homomorphism(E, Ga, G, p, D)
    self.check('fgl', _name('exponential_split', p),
               'Proposition (truncated exponential): '
               'E_lam is a homomorphism G_a -> G_lam modulo lam^(p-1) but '
               'not modulo lam^p',
               below and not at, degree=D, mod_lam_p_minus_1=below,
               mod_lam_p=at)
    defect = fgl.exponential_defect(p, D)
    self.check('fgl', _name('exponential_defect', p),
               'Lemma (exponential defect): '
               'the defect is lam^(p-1) ((u+v)^p - u^p - v^p)/p!',
               defect == fgl.expected_exponential_defect(p, D),
               defect=defect.to_text())
    AH = fgl.artin_hasse(p, AH_DEGREE)
    self.check('fgl', _name('artin_hasse', p),
               'Lemma (Artin-Hasse exponential): '
               'the Artin-Hasse exponential is p-integral',
               is_p_integral(AH, p), degree=AH_DEGREE)


@monkeypatch_class(Verifier)
def _psi(self, p):
    D = self.config.degree_t
    instances = [self.config.lambda_degree(p)]
    # T_1 only shows up once lam^(p-1) is kept
    if p == 2 and fgl.minimal_psi_coordinates(p, instances[0]) < 2:
        instances.append(3)
    for L in instances:
        m = fgl.minimal_psi_coordinates(p, L)
        tag = _name('psi', p) + '_m{}'.format(m)
        proj = fgl.psi_projection(p, m, D, L)
        self.check('fgl', tag + '_projection',
                   'Construction (Witt homomorphism Psi): '
                   'Psi at lam = 0 is the projection to T_0',
                   proj == proj.ring.gen('T_0'), lambda_degree=L)
        self.check('fgl', tag + '_exponential',
                   'Construction (Witt homomorphism Psi): '
                   'Psi restricted to T_0 agrees with E_lam below lam^(p-1)',
                   fgl.psi_matches_exponential(p, m, D, L), lambda_degree=L)
        self.check('fgl', tag + '_homomorphism',
                   'Proposition (Witt homomorphism Psi): '
                   'Psi is additive for the Witt sum and kills '
                   'V - [lam^(p-1)]',
                   fgl.psi_homomorphism_check(p, m, D, L), lambda_degree=L,
                   degree=D)


@monkeypatch_class(Verifier)
def _height(self, p):
    h = 1
    while p ** h <= max(self.config.degree_t, p):
        F = fgl.height_h_law(p, h)
        N = p ** h
        order = fgl.obstruction_order(fgl.rescaled_law(F, N - 1))
        self.check('fgl', _name('height', p) + '_h{}'.format(h),
                   'Example (height h law): '
                   'the height h law is a formal group law whose rescaling '
                   'first differs from G_a at lam^(p^h - 1)',
                   fgl.validate_fgl(F) and order == N - 1,
                   obstruction_order=order, law=F.law.to_text())
        h += 1


# -- restricted Lie algebras ------------------------------------------

@monkeypatch_class(Verifier)
def suite_lie(self):
    """The multilinear identities, Jacobson's formula and the restricted
    structure on gl_n and on derivations."""
    n = self.config.matrix_dim
    for p in self.config.primes:
        rng = self.rng('lie', p)
        self.check('lie', _name('norm_is_bracket', p),
                   'Lemma (norm and brackets): '
                   'the sum of iterated brackets w expands to the norm N',
                   liealg.lie_to_assoc(liealg.w_element(p)) ==
                   liealg.norm_element(p))
        rank = liealg.lie_to_assoc_rank(p)
        self.check('lie', _name('lie_words_independent', p),
                   'Lemma (Lie words): '
                   'the (p-1)! left-normed bracket words are independent',
                   rank == factorial(p - 1), rank=rank)
        try:
            L = liealg.jacobson_L(p, certify=False)
            expands = L.to_assoc() == dict(
                (w, 1) for w in liealg.mixed_words(p))
            witness = dict(L=str(L), words=len(L.terms))
        except CertificationFailure as e:
            expands, witness = False, dict(error=str(e))
        self.check('lie', _name('jacobson', p),
                   'Theorem (Jacobson formula): '
                   '(x + y)^p = x^p + y^p + L(x, y) with L a Lie polynomial',
                   expands, **witness)
        report = liealg.restricted_checks(n, p, self.config.trials, rng)
        self.check('lie', _name('restricted_gl', p),
                   'Example (restricted gl_n): '
                   'gl_n(F_p) with the matrix p-th power is restricted',
                   report.passed, dim=n, **report.todict())
        if p in (2, 3):
            report = liealg.gamma_p_verschiebung_checks(
                n, p, self.config.trials, rng)
            self.check('lie', _name('gamma_p', p),
                       'Proposition (divided powers): '
                       'the Verschiebung on Gamma^p(gl_n) is the bracket w',
                       report.passed, dim=n, **report.todict())
        self._derivations(p, rng)


@monkeypatch_class(Verifier)
def _derivations(self, p, rng):
    N = 2 * p
    euler = liealg.euler_derivation(p, N)
    power = liealg.derivation_pth_power(euler)
    self.check('lie', _name('euler_restricted', p),
               'Example (restricted derivations): '
               '(x d/dx)^p = x d/dx on F_p[x]/x^N',
               power == euler, size=N)
    power = liealg.derivation_pth_power(liealg.d_dx(p, N))
    self.check('lie', _name('d_dx_restricted', p),
               'Example (restricted derivations): '
               '(d/dx)^p = 0 on F_p[x]/x^N',
               power == liealg.TruncatedDerivation(p, N, [0]), size=N)
    M = liealg.d_dx(p, N).matrix()
    bad = 0
    for _ in range(min(self.config.trials, 50)):
        f = rng.randint(0, p, size=N)
        g = rng.randint(0, p, size=N)
        bad += not liealg.leibniz_holds(M, f, g, p)
    self.check('lie', _name('leibniz', p),
               'Lemma (Leibniz rule): '
               'd/dx satisfies the Leibniz rule on F_p[x]/x^N',
               bad == 0, failures=bad)


# -- G_a^dR duality ---------------------------------------------------

@monkeypatch_class(Verifier)
def suite_gadual(self):
    """Theta-modules, the co-Lie complex, Bocksteins and Ext."""
    for p in self.config.primes:
        n = self.config.witt_length_for(p)
        rng = self.rng('gadual', p)
        bases = [gadual.BaseRing(p, k, l) for k in (1, 2) for l in (1, p)]
        self.check('gadual', _name('trivial_cohomology', p),
                   'Example (trivial module): '
                   'the trivial module has H^0 = H^1 = R',
                   all(gadual.cohomology_of_rep(gadual.trivial_module(R)) ==
                       (gadual.FiniteModule.free(R),) * 2 for R in bases),
                   bases=[repr(R) for R in bases])
        F = gadual.BaseRing(p)
        tau = gadual.tau_module(F)
        h0, h1 = gadual.cohomology_of_rep(tau)
        self.check('gadual', _name('tau_module', p),
                   'Lemma (Jordan block): '
                   'the Jordan block has one-dimensional H^0 and H^1',
                   h0.length == 1 and h1.length == 1,
                   H0=repr(h0), H1=repr(h1))
        index = gadual.tensor(tau, tau).nilpotency_index()
        self.check('gadual', _name('tensor_nilpotent', p),
                   'Lemma (tensor product of theta-modules): '
                   'theta on a tensor product is nilpotent',
                   index == (2 if p == 2 else 3), index=index)
        C = gadual.colie_complex(p, n)
        self.check('gadual', _name('colie_differential', p),
                   'Proposition (co-Lie complex): '
                   'D(dS_i) = p dT_(i+1) - lam^(p^i (p-1)) dT_i',
                   np.array_equal(C.differential(-1),
                                  gadual.expected_colie_differential(p, n)),
                   complex=C.todict())
        self.check('gadual', _name('colie_bockstein', p),
                   'Lemma (co-Lie Bockstein): '
                   'Bock(dS_i) = dT_(i+1) and Bock(dT_i) = 0',
                   gadual.colie_bockstein_holds(p, n))
        self._bocksteins(p, rng)
        table = gadual.ext_table(p, n)
        ranks = [table[k]['rank'] for k in range(4)]
        self.check('gadual', _name('ext_ranks', p),
                   'Proposition (Ext of the co-Lie complex): '
                   'Ext^* of the co-Lie complex has ranks n, 2n, n, 0',
                   ranks == [n, 2 * n, n, 0], ranks=ranks,
                   basis=dict((k, table[k]['basis']) for k in range(3)))
        self.check('gadual', _name('pairing', p),
                   'Lemma (duality pairing): '
                   'the dual basis pairs perfectly with dT_0..dT_(n-1)',
                   np.array_equal(gadual.pairing(p, n), np.identity(n)))
        if n >= 2:
            cls = gadual.deformation_class(p, n)
            self.check('gadual', _name('deformation_class', p),
                       'Theorem (deformation class): '
                       'the deformation class is -lam^(p-1) tau∂_S0 and '
                       'equals Bock(tau∂_T1)',
                       gadual.deformation_class_check(p, n) and
                       cls['coefficient'] == p - 1, **cls)


@monkeypatch_class(Verifier)
def _bocksteins(self, p, rng):
    base = gadual.BaseRing(p, 2)
    tau = gadual.tau_class(base)
    self.check('gadual', _name('tau_bockstein', p),
               'Lemma (integral lift of tau): '
               'tau lifts to an integral class, so Bock(tau) = 0',
               not gadual.bockstein(tau.complex, tau.representative, 1).any())
    trials = self.config.trials
    independent = 0
    for _ in range(trials):
        C = gadual.random_two_term(base, rng)
        z = gadual.random_cocycle(C, 0, rng)
        independent += gadual.bockstein_lift_independent(C, z, 0, rng)
    self.check('gadual', _name('bockstein_lift', p),
               'Lemma (Bockstein lift independence): '
               'the Bockstein does not depend on the chosen lift',
               independent == trials, trials=trials)
    report = gadual.bockstein_leibniz_check(p, trials, rng)
    self.check('gadual', _name('bockstein_leibniz', p),
               'Lemma (Bockstein derivation): '
               'the Bockstein is a derivation for tensor and Hom',
               report.passed, **report.todict())


# -- spectral sequences -----------------------------------------------

@monkeypatch_class(Verifier)
def suite_specseq(self):
    """Pages, convergence, split vanishing and weight vanishing."""
    trials = self.config.trials
    for p in self.config.primes:
        rng = self.rng('specseq', p)
        FC = specseq.two_step_complex(p)
        E2, E3 = specseq.compute_page(FC, 2), specseq.compute_page(FC, 3)
        self.check('specseq', _name('two_step', p),
                   'Example (two-step complex): '
                   'd_2 is an isomorphism and E_3 = 0 for F_p -> F_p '
                   'across one level',
                   E2.total_dim == 2 and E2.d_rank(0, 0) == 1 and
                   E3.total_dim == 0, E2=E2.todict())
        bad = []
        for _ in range(trials):
            FC = specseq.random_filtered_complex(p, rng)
            specseq.pages(FC)
            if not specseq.convergence_holds(FC) and len(bad) < 3:
                bad.append(FC.todict())
        self.check('specseq', _name('convergence', p),
                   'Theorem (convergence): '
                   'E_infinity is gr of the induced filtration on H',
                   not bad, trials=trials, counterexamples=bad)
        for n in range(3):
            self._split(p, n, rng)
        self._adams(p, rng)


@monkeypatch_class(Verifier)
def _split(self, p, n, rng):
    trials = self.config.trials
    counts = {'split': 0, 'vanishing': 0, 'edge': 0}
    nonzero = 0
    for _ in range(trials):
        FC, SD, _ = specseq.split_complex(p, n, rng)
        counts['split'] += specseq.verify_split(FC, SD)
        counts['vanishing'] += specseq.split_vanishing_check(FC, SD)
        counts['edge'] += specseq.edge_matches_page(FC, SD)
        nonzero += not specseq.compute_page(FC, n + 2).is_degenerate()
    log.debug('p={} n={}: d_(n+2) nonzero on {} of {} complexes'
              .format(p, n, nonzero, trials))
    tag = _name('split', p) + '_n{}'.format(n)
    self.check('specseq', tag + '_vanishing',
               'Theorem (split vanishing): '
               'on a complex split to order n, d_2 .. d_(n+1) vanish',
               counts['split'] == trials and counts['vanishing'] == trials,
               trials=trials, **counts)
    self.check('specseq', tag + '_edge',
               'Theorem (extension edge): '
               'd_(n+2) is induced by the extension edge of the splitting',
               counts['edge'] == trials, trials=trials,
               nonzero_pages=nonzero)


@monkeypatch_class(Verifier)
def _adams(self, p, rng):
    m = int(primitive_root(p))
    expected = [r for r in range(2, 14) if (r - 1) % (p - 1) == 0]
    self.check('specseq', _name('adams_allowed_pages', p),
               'Theorem (weight vanishing): '
               'd_r can be nonzero only for r = 1 mod p - 1',
               specseq.allowed_pages(p, m, 13) == expected, m=m,
               allowed=expected)
    violations = []
    for _ in range(self.config.trials):
        FC = specseq.weight_pure_complex(p, m, rng)
        result = specseq.adams_vanishing_check(FC, m)
        if not result['ok'] and len(violations) < 3:
            violations.append(result)
    self.check('specseq', _name('adams_vanishing', p),
               'Lemma (weight purity): '
               'differentials between different weights vanish',
               not violations, m=m, trials=self.config.trials,
               counterexamples=violations)
