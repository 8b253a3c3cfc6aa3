"""Command line front end.

    hkrcheck SUITE [--prime P ...] [--witt-length N] ... [--format text]

Exit status 0 when every check passes, 1 when some check fails and 2 for
a bad configuration.
"""
import argparse
import logging
import sys

from .exceptions import ConfigError
from .logger import log
from .verifier import SUITES, SuiteConfig, Verifier
from .validate import keywords


def parser():
    docs = dict(keywords())
    ap = argparse.ArgumentParser(
        prog='hkrcheck',
        description='Verify the algebraic identities behind the '
        'decomposition of de Rham complexes in characteristic p.')
    ap.add_argument('suite', choices=SUITES + ['all'],
                    help='which suite to run')
    ap.add_argument('--prime', '-p', type=int, action='append',
                    dest='primes', help=docs['primes'] + '; may repeat')
    ap.add_argument('--witt-length', type=int, help=docs['witt_length'])
    ap.add_argument('--degree-t', type=int, help=docs['degree_t'])
    ap.add_argument('--degree-lambda', type=int, help=docs['degree_lambda'])
    ap.add_argument('--matrix-dim', type=int, help=docs['matrix_dim'])
    ap.add_argument('--trials', type=int, help=docs['trials'])
    ap.add_argument('--seed', type=int, help=docs['seed'])
    ap.add_argument('--format', dest='output_format',
                    choices=['json', 'text'], default='json',
                    help=docs['output_format'])
    ap.add_argument('--out', metavar='FILE',
                    help='write the report here instead of stdout')
    ap.add_argument('--timing', action='store_true', help=docs['timing'])
    ap.add_argument('--debug', action='store_true',
                    help='log at debug level and let exceptions propagate')
    ap.add_argument('--projective-dim', type=int,
                    help=docs['projective_dim'])
    return ap


def config_from_args(args):
    return SuiteConfig(primes=args.primes,
                       witt_length=args.witt_length,
                       degree_t=args.degree_t,
                       degree_lambda=args.degree_lambda,
                       matrix_dim=args.matrix_dim,
                       trials=args.trials,
                       seed=args.seed,
                       output_format=args.output_format,
                       timing=args.timing,
                       projective_dim=args.projective_dim)


def main(argv=None):
    args = parser().parse_args(argv)
    debug = logging.DEBUG if args.debug else None
    try:
        config = config_from_args(args)
        report = Verifier(config, debug=debug).run(args.suite)
    except ConfigError as e:
        log.error('{} ({})'.format(e, e.keyword))
        return 2

    out = report.jsonpp if config.output_format == 'json' else report.text
    if args.out:
        with open(args.out, 'w') as f:
            f.write(out + '\n')
    else:
        sys.stdout.write(out + '\n')
    return 0 if report.passed else 1


if __name__ == '__main__':
    sys.exit(main())
