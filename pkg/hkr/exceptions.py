"""Exceptions for hkr."""


class HkrError(Exception):
    '''Base class for errors raised by the hkr library.'''
    def __init__(self, message=''):
        Exception.__init__(self, message)
        self.message = message

    def __str__(self):
        return self.message


# ring
class NotDivisible(HkrError):
    pass


class IncompatibleRings(HkrError):
    pass


class NonComposable(HkrError):
    pass


class InvalidCoefficientRing(HkrError):
    pass


# witt
class IntegralityFailure(HkrError):
    '''A ghost-equation solve produced a non-integral coefficient.

    The classical theorems guarantee integrality, so this is a bug.'''
    pass


class LengthMismatch(HkrError):
    pass


class LengthCapExceeded(HkrError):
    pass


class PolynomialExplosion(HkrError):
    '''A structure polynomial grew past HKR_MAX_TERMS.'''
    pass


class IndexOutOfRange(HkrError, IndexError):
    pass


# fgl
class PsiTruncationError(HkrError):
    pass


# liealg
class ArityTooLarge(HkrError):
    pass


class CertificationFailure(HkrError):
    pass


class NotADerivation(HkrError):
    pass


# gadual
class RingMismatch(HkrError):
    pass


class NotAComplex(HkrError):
    pass


class LiftNotCocycle(HkrError):
    pass


# specseq
class InvalidFiltration(HkrError):
    pass


class MalformedSplitData(HkrError):
    pass


class WeightMismatch(HkrError):
    pass


class NotPrimitiveRoot(HkrError, ValueError):
    pass


# cli
class ConfigError(HkrError):
    def __init__(self, message='', keyword=None):
        HkrError.__init__(self, message)
        self.keyword = keyword
