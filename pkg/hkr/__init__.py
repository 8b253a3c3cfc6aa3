"""Exact algebra for the decomposition of de Rham complexes in
characteristic p: Witt vectors, formal group laws, restricted Lie
algebras, G_a^dR duality and spectral sequences, plus a verifier."""
from .verifier import Verifier, SuiteConfig, Report, run_suite

__version__ = '0.1'
