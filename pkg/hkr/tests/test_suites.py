import re

from numpy.testing import assert_raises

from hkr.exceptions import CertificationFailure, ConfigError
from hkr.verifier import SuiteConfig, Verifier, SUITES, run_suite
from hkr import cli, demos, liealg

ANCHOR = re.compile(r'^(Theorem|Proposition|Lemma|Example|Definition|'
                    r'Construction|Fact) \([^)]+\): \S')


def test_defaults():
    for name in SUITES:
        report = run_suite(name, SuiteConfig())
        assert report.passed, [c.todict() for c in report.failures]
        assert report.checks


def test_anchor_form():
    report = run_suite('all', SuiteConfig(primes=[2], trials=2))
    for c in report.checks:
        assert ANCHOR.match(c.anchor), (c.name, c.anchor)


def test_default_witt_length_per_prime():
    cfg = SuiteConfig(primes=[2, 3, 5])
    assert [cfg.witt_length_for(p) for p in (2, 3, 5)] == [3, 3, 2]
    assert SuiteConfig(witt_length=4).witt_length_for(2) == 4
    for suite in ('lie', 'fgl', 'specseq'):
        assert cli.main([suite, '-p', '5', '--trials', '2',
                         '--matrix-dim', '2']) == 0
    report = run_suite('witt', SuiteConfig(primes=[5], trials=2))
    assert report.passed, [c.todict() for c in report.failures]


def test_explicit_witt_length_over_cap():
    v = Verifier(SuiteConfig(primes=[2, 5], witt_length=3, trials=2))
    try:
        v.run('witt')
    except ConfigError as e:
        assert e.keyword == 'witt_length'
    else:
        raise AssertionError('witt_length = 3 accepted for p = 5')
    assert_raises(ConfigError, v.run, 'gadual')
    assert_raises(ConfigError, v.run, 'all')
    assert v.run('lie').passed
    assert_raises(ConfigError, SuiteConfig, witt_length=5)


def test_jacobson_recorded_from_expansion():
    real = liealg.jacobson_L

    def doubled(p, certify=True):
        L = real(p, certify=False)
        return liealg.LiePolynomial(
            p, dict((w, 2 * c) for w, c in L.terms.items()))

    def uncertified(p, certify=True):
        raise CertificationFailure('no L for p={}'.format(p))

    try:
        liealg.jacobson_L = doubled
        checks = dict((c.name, c) for c in
                      Verifier(SuiteConfig(primes=[3], trials=2)).run(
                          'lie').checks)
        assert not checks['jacobson_p3'].ok
        assert 'restricted_gl_p3' in checks
        assert checks['norm_is_bracket_p3'].ok

        liealg.jacobson_L = uncertified
        v = Verifier(SuiteConfig(primes=[3], trials=2))
        v.suite_lie()
        checks = dict((c.name, c) for c in v.records)
        assert not checks['jacobson_p3'].ok
        assert checks['jacobson_p3'].witness['error'] == 'no L for p=3'
    finally:
        liealg.jacobson_L = real
    checks = dict((c.name, c) for c in
                  run_suite('lie', SuiteConfig(primes=[3], trials=2)).checks)
    assert checks['jacobson_p3'].ok


def test_projective_bockstein_vanishes():
    for p in (2, 3):
        for n in (1, 4):
            B = demos.lifted_bockstein(n, p)
            assert B.shape == (n + 1, n + 1)
            assert not B.any()
    report = Verifier(SuiteConfig(primes=[3])).demo_projective_space(2)
    checks = dict((c.name, c) for c in report.checks)
    witness = checks['projective_p3_n2_degenerates'].witness
    assert witness['torsion_free']
    assert witness['bockstein'] == [[0] * 3] * 3
