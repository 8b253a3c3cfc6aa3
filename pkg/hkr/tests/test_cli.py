import json
import logging
import os
import shutil
import tempfile

import numpy as np
from numpy.testing import assert_raises

from hkr.exceptions import ConfigError
from hkr.verifier import SuiteConfig, Verifier, SUITES, run_suite, tryit
from hkr.logger import log
from hkr.serialize import jsonable
from hkr.ring import rational, ModPrimePower
from hkr import cli, validate


def _run(*argv):
    tmp = tempfile.mkdtemp()
    try:
        out = os.path.join(tmp, 'report')
        status = cli.main(list(argv) + ['--out', out])
        with open(out) as f:
            return status, f.read()
    finally:
        shutil.rmtree(tmp)


def test_witt_json():
    status, text = _run('witt', '--prime', '2', '--witt-length', '2',
                        '--trials', '3')
    assert status == 0
    report = json.loads(text)
    assert report['suite'] == 'witt'
    assert report['status'] == 'pass'
    assert report['params']['primes'] == [2]
    assert report['elapsed_ms'] is None
    names = set(c['name'] for c in report['checks'])
    assert 'ghost_sum_p2' in names
    assert all(c['status'] == 'pass' for c in report['checks'])


def test_text_format():
    status, text = _run('specseq', '-p', '3', '--trials', '2',
                        '--format', 'text')
    assert status == 0
    assert text.splitlines()[0].split() == ['status', 'check', 'anchor']
    assert 'specseq: PASS' in text


def test_bad_configuration():
    assert cli.main(['witt', '--prime', '7']) == 2
    assert cli.main(['witt', '--prime', '5', '--witt-length', '3']) == 2
    assert cli.main(['lie', '--trials', '0']) == 2


def test_deterministic():
    a = _run('lie', '-p', '2', '--trials', '4', '--seed', '3')
    b = _run('lie', '-p', '2', '--trials', '4', '--seed', '3')
    assert a == b


def test_timing():
    status, text = _run('demo', '-p', '2', '--trials', '2',
                        '--projective-dim', '2', '--timing')
    assert status == 0
    report = json.loads(text)
    assert report['elapsed_ms'] >= 0
    names = set(c['name'] for c in report['checks'])
    assert 'projective_p2_n2_degenerates' in names


def test_suite_config():
    cfg = SuiteConfig(primes=3)
    assert cfg.primes == [3]
    assert cfg.lambda_degree(3) == 3
    assert SuiteConfig(primes=[5, 2, 5]).primes == [2, 5]
    assert 'output_format' not in cfg.todict()
    assert_raises(ConfigError, SuiteConfig, frobnicate=1)
    try:
        SuiteConfig(degree_lambda=7, primes=[3])
    except ConfigError as e:
        assert e.keyword == 'degree_lambda'
    else:
        raise AssertionError('degree_lambda = 7 accepted for p = 3')


def test_keywords_documented():
    keys = dict(validate.keywords())
    for key in SuiteConfig.default_parameters:
        assert keys[key]


def test_unknown_suite():
    assert_raises(ConfigError, Verifier().run, 'nonsense')
    assert 'all' not in SUITES


def test_exception_becomes_failure():
    def suite_witt(self):
        raise ZeroDivisionError('boom')

    v = Verifier(SuiteConfig(primes=[2], trials=1))
    tryit(suite_witt)(v)
    assert len(v.records) == 1
    assert v.records[0].suite == 'witt' and not v.records[0].ok
    assert v.records[0].witness['type'] == 'ZeroDivisionError'
    v = Verifier(SuiteConfig(primes=[2], trials=1), debug=logging.DEBUG)
    assert_raises(ZeroDivisionError, tryit(suite_witt), v)
    log.setLevel(logging.NOTSET)


def test_jsonable():
    data = {1: rational(1, 3), 'a': (np.int64(2), ModPrimePower(5, 3, 2)),
            'b': np.array([[1, 0]]), 'c': {2, 1}, 'd': np.bool_(True)}
    assert jsonable(data) == {'1': '1/3', 'a': [2, 5], 'b': [[1, 0]],
                              'c': [1, 2], 'd': True}


def test_run_suite():
    report = run_suite('gadual', SuiteConfig(primes=[2], trials=2))
    assert report.passed, [c.todict() for c in report.failures]
    assert report.suite == 'gadual'
