"""Exception hierarchy for bchlab."""


class BchLabError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(BchLabError, ValueError):
    pass


class SizeExceeded(BchLabError):
    """A table or enumeration would exceed its configured desk-scale cap."""


class NoPrimitivePolyFound(BchLabError, RuntimeError):
    pass


class EvenCharacteristic(BchLabError, ValueError):
    pass


class EvenPrime(EvenCharacteristic):
    pass


class NotInSubfield(BchLabError, ValueError):
    pass


class CoefficientNotInSubfield(NotInSubfield):
    pass


class DivisionByZeroPoly(BchLabError, ZeroDivisionError):
    pass


class NotADivisor(BchLabError, ValueError):
    pass


class OutOfRange(BchLabError, ValueError):
    pass


class OddM(BchLabError, ValueError):
    pass


class EvenQ(BchLabError, ValueError):
    pass


class MTooSmallForDelta3(BchLabError, ValueError):
    pass


class UnsupportedResidue(BchLabError, ValueError):
    pass


class QTooSmall(BchLabError, ValueError):
    pass


class BadDelta(BchLabError, ValueError):
    pass


class OutOfProvenRange(BchLabError, ValueError):
    """Parameters fall outside the range where a closed form is proven."""


class LambdaOne(OutOfProvenRange):
    pass


class KindParityMismatch(BchLabError, ValueError):
    pass


class UnsupportedParams(BchLabError, ValueError):
    pass
