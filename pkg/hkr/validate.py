"""Validation functions for SuiteConfig keywords.

Each function has the signature func(config, val) and validates with
assertions. The first line of the docstring is used in error messages
and by keywords().

"""
from .witt import LENGTH_CAPS

PRIMES = (2, 3, 5)


def _primes(config):
    return config.parameters.get('primes') or []


def primes(config, val):
    """primes to run the suites for, a subset of {2, 3, 5} (list of int)"""
    assert isinstance(val, (list, tuple))
    assert len(val) > 0
    assert all(isinstance(p, int) and p in PRIMES for p in val)


def witt_length(config, val):
    """Witt vector length n, at most 4 (p=2), 3 (p=3), 2 (p=5); default 3 or the cap (int)"""
    assert val is None or (isinstance(val, int) and
                           2 <= val <= max(LENGTH_CAPS.values()))


def degree_t(config, val):
    """truncation degree D_T of series in the Witt and u, v variables (int)

    At most 12; at least 2.
    """
    assert isinstance(val, int) and 2 <= val <= 12


def degree_lambda(config, val):
    """largest power D_lam of lam kept, at most 2p; None means p (int)"""
    if val is None:
        return
    assert isinstance(val, int) and val >= 1
    assert all(val <= 2 * p for p in _primes(config) if p in PRIMES)


def matrix_dim(config, val):
    """dimension of the matrix Lie algebras gl_n, at most 3 (2 with p=5)"""
    assert isinstance(val, int) and 1 <= val <= 3
    if 5 in _primes(config):
        assert val <= 2


def trials(config, val):
    """number of randomized trials per property, 1 to 1000 (int)"""
    assert isinstance(val, int) and 1 <= val <= 1000


def seed(config, val):
    """seed of the numpy RandomState used by the randomized checks (int)"""
    assert isinstance(val, int) and val >= 0


def output_format(config, val):
    """report format, json or text (str)"""
    assert val in ('json', 'text')


def timing(config, val):
    """record wall time in the report (bool)"""
    assert isinstance(val, bool)


def projective_dim(config, val):
    """dimension n of the projective space in the demo (int >= 1)"""
    assert isinstance(val, int) and 1 <= val <= 50


def keywords():
    """(keyword, first docstring line) for every validated keyword."""
    out = []
    for key, f in sorted(globals().items()):
        if (key.startswith('_') or key in ('keywords', 'LENGTH_CAPS',
                                           'PRIMES') or not callable(f)):
            continue
        out.append((key, (f.__doc__ or '').split('\n')[0]))
    return out
