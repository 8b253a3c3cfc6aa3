"""The core Verifier.

I aim to keep this file small. The suites and demos are defined in
hkr.suites and hkr.demos and monkeypatched onto Verifier; serialization
lives in hkr.serialize.

"""
import sys
import time
import traceback

import numpy as np

import hkr.exceptions
from hkr import validate
from .logger import log


SUITES = ['witt', 'fgl', 'lie', 'gadual', 'specseq', 'demo']


def SuiteExceptionHandler(verifier, suite, exc_type, exc_value,
                          exc_traceback):
    """Turn an exception inside a suite into a failing check.

    ConfigError is always re-raised.
    """
    if issubclass(exc_type, hkr.exceptions.ConfigError):
        raise exc_value
    log.debug(''.join(traceback.format_exception(exc_type, exc_value,
                                                 exc_traceback)))
    verifier.check(suite, 'exception',
                   'Fact (suite run): the suite ran to completion', False,
                   type=exc_type.__name__, message=str(exc_value))
    return None


def tryit(func):
    """Decorator to run a suite method under the verifier's exception
    handler. With debug set, exceptions propagate."""
    def inner(self, *args, **kwargs):
        if self.debug is not None or self.exception_handler is None:
            return func(self, *args, **kwargs)
        try:
            return func(self, *args, **kwargs)
        except Exception:
            suite = func.__name__.replace('suite_', '', 1)
            return self.exception_handler(self, suite, *sys.exc_info())

    inner.__name__ = func.__name__
    inner.__doc__ = (func.__doc__ or '') + '\n\n        Wrapped in hkr.tryit.'
    return inner


class SuiteConfig(object):
    """Parameters shared by all suites.

    Every keyword is checked by the function of the same name in
    hkr.validate; an AssertionError there becomes a ConfigError.
    """
    default_parameters = dict(
        primes=[2, 3],
        witt_length=None,  # 3, or the cap for p
        degree_t=6,
        degree_lambda=None,  # p
        matrix_dim=2,
        trials=100,
        seed=0,
        output_format='json',
        timing=False,
        projective_dim=4)

    def __init__(self, **kwargs):
        self.parameters = dict(SuiteConfig.default_parameters)
        for key, val in kwargs.items():
            if val is not None or key == 'degree_lambda':
                self.parameters[key] = val
        if isinstance(self.parameters['primes'], int):
            self.parameters['primes'] = [self.parameters['primes']]
        self.parameters['primes'] = sorted(set(self.parameters['primes']))
        for key in sorted(self.parameters):
            if key not in validate.__dict__ or key.startswith('_'):
                raise hkr.exceptions.ConfigError(
                    'unknown keyword {}'.format(key), key)
            try:
                validate.__dict__[key](self, self.parameters[key])
            except AssertionError:
                raise hkr.exceptions.ConfigError(
                    'invalid {} = {!r}: {}'.format(
                        key, self.parameters[key],
                        validate.__dict__[key].__doc__.split('\n')[0]), key)

    def __getattr__(self, key):
        parameters = self.__dict__.get('parameters', {})
        if key in parameters:
            return parameters[key]
        raise AttributeError(key)

    def lambda_degree(self, p):
        d = self.parameters['degree_lambda']
        return p if d is None else d

    def witt_length_for(self, p):
        """The Witt length used at p: the configured one, or 3 cut down to
        the cap for p."""
        n = self.parameters['witt_length']
        return min(3, validate.LENGTH_CAPS[p]) if n is None else n

    def require_witt_length(self):
        """An explicit witt_length must fit under the cap of every prime."""
        n = self.parameters['witt_length']
        if n is None:
            return
        over = [p for p in self.primes if n > validate.LENGTH_CAPS[p]]
        if over:
            raise hkr.exceptions.ConfigError(
                'invalid witt_length = {}: above the cap for p = {}'.format(
                    n, ', '.join(str(p) for p in over)), 'witt_length')

    def todict(self):
        d = dict(self.parameters)
        d.pop('output_format')
        d.pop('timing')
        return d


class CheckRecord(object):
    """One verified statement: its anchor, outcome and witness data."""

    def __init__(self, suite, name, anchor, ok, witness=None):
        self.suite = suite
        self.name = name
        self.anchor = anchor
        self.ok = bool(ok)
        self.witness = witness or {}

    @property
    def status(self):
        return 'pass' if self.ok else 'fail'

    @property
    def key(self):
        return (self.suite, self.name)

    def todict(self):
        return {'suite': self.suite, 'name': self.name,
                'anchor': self.anchor, 'status': self.status,
                'witness': self.witness}


class Report(object):

    def __init__(self, suite, params, checks, elapsed_ms=None):
        self.suite = suite
        self.params = params
        self.checks = sorted(checks, key=lambda c: c.key)
        self.elapsed_ms = elapsed_ms

    @property
    def passed(self):
        return all(c.ok for c in self.checks)

    @property
    def status(self):
        return 'pass' if self.passed else 'fail'

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]

    def todict(self):
        return {'suite': self.suite,
                'params': self.params,
                'checks': [c.todict() for c in self.checks],
                'status': self.status,
                'elapsed_ms': self.elapsed_ms}


class Verifier(object):
    """Runs the verification suites for one SuiteConfig.

    debug: an integer, usually logging.DEBUG. It sets the log level and
    lets exceptions inside suites propagate.

    exception_handler: called as handler(verifier, suite, *sys.exc_info())
    when a suite raises. The default is SuiteExceptionHandler.
    """
    debug = None

    def __init__(self, config=None, debug=None,
                 exception_handler=SuiteExceptionHandler, **kwargs):
        self.config = config if config is not None else SuiteConfig(**kwargs)
        self.debug = debug
        if debug is not None:
            log.setLevel(debug)
        self.exception_handler = exception_handler
        self.records = []

    def rng(self, suite, salt=0):
        """A RandomState for one suite, independent of the suite order."""
        offset = SUITES.index(suite) if suite in SUITES else len(SUITES)
        return np.random.RandomState(self.config.seed * 1009 +
                                     offset * 101 + salt)

    def check(self, suite, name, anchor, ok, **witness):
        """Record one check; failures are logged with their witness."""
        from .serialize import jsonable
        record = CheckRecord(suite, name, anchor, ok, jsonable(witness))
        if not record.ok:
            log.warning('{}.{} failed: {}'.format(suite, name,
                                                  record.witness))
        self.records.append(record)
        return record.ok

    def run(self, name):
        """Run one suite, or all of them, and return the Report."""
        names = SUITES if name == 'all' else [name]
        for n in names:
            if n not in SUITES:
                raise hkr.exceptions.ConfigError(
                    'unknown suite {}; choose from {}'.format(
                        n, ', '.join(SUITES + ['all'])), 'suite')
        if 'witt' in names or 'gadual' in names:
            self.config.require_witt_length()
        self.records = []
        start = time.time()
        for n in names:
            log.debug('suite {} starting'.format(n))
            getattr(self, 'suite_' + n)()
            log.debug('suite {} finished'.format(n))
        elapsed = None
        if self.config.timing:
            elapsed = int(round(1000 * (time.time() - start)))
        return Report(name, self.config.todict(), self.records, elapsed)


def run_suite(name, cfg=None, debug=None):
    """Run the named suite ('witt', ..., 'all') under cfg."""
    return Verifier(cfg, debug=debug).run(name)


# These modules monkeypatch the Verifier class
import hkr.suites  # noqa: E402,F401
import hkr.demos  # noqa: E402,F401
import hkr.serialize  # noqa: E402,F401

for attr in list(Verifier.__dict__):
    if attr.startswith('suite_'):
        setattr(Verifier, attr, tryit(getattr(Verifier, attr)))
