"""Exception types shared across the sagan package."""


class SaganError(Exception):
    """Base class for all package errors."""


class UnsupportedConstant(SaganError):
    """The requested constant is not in the supported set."""


class PrecisionExhausted(SaganError):
    """Internal precision budget could not certify the requested digits."""


class InsufficientInputDigits(SaganError):
    """Base conversion was given fewer source digits than its guard policy needs."""


class InvalidDigit(SaganError):
    """A digit value is outside the range permitted by its base."""


class NonPositiveCoefficient(SaganError):
    """A continued-fraction coefficient after the integer term must be >= 1."""


class EllipseOutOfRaster(SaganError):
    """The requested ellipse does not fit inside the raster."""


class EvenOrTooSmallN(SaganError):
    """The operation requires an odd side length n >= 3."""


class AsymmetricPattern(SaganError):
    """The pattern lacks the dihedral symmetry the operation relies on."""


class WrongOctantLength(SaganError):
    """The octant bit string length does not match the side length n."""


class BaseTooSmall(SaganError):
    """The base cannot represent every digit the pattern may contain."""


class BaseMismatch(SaganError):
    """Stream base and matcher base differ."""


class LimitTooSmall(SaganError):
    """The search limit is smaller than the pattern window."""


class DigitOutOfRange(SaganError):
    """The digit to search for is not a valid digit of the stream's base."""


class KTooLarge(SaganError):
    """The k-gram table b**k would exceed the counting budget."""


class BlockTooShort(SaganError):
    """The digit block is shorter than the window size k."""


class TooFewSamples(SaganError):
    """Not enough digits for the chi-square applicability guard."""


class MismatchedTotals(SaganError):
    """trials must equal categories * per_category."""


class CarryAmbiguity(SaganError):
    """Digit extraction could not rule out a carry into the requested window."""


class CacheError(SaganError):
    """A digit cache file is malformed, corrupt, or inconsistent."""
