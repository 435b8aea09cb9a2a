"""Exception types shared across the package."""


class MixedCodeError(Exception):
    """Base class for every error raised by mixedcode."""


class NonPrimePower(MixedCodeError, ValueError):
    pass


class OutOfRange(MixedCodeError, ValueError):
    pass


class DivisionByZero(MixedCodeError, ZeroDivisionError):
    pass


class TooLarge(MixedCodeError):
    """Requested enumeration or dense object exceeds the configured budget."""


class SideConditionViolated(MixedCodeError, ValueError):
    pass


class EmptySupport(MixedCodeError, ValueError):
    pass


class LengthMismatch(MixedCodeError, ValueError):
    pass


class ZeroCode(MixedCodeError, ValueError):
    pass


class NotFoundWithinCap(MixedCodeError):
    pass


class ZeroColumn(MixedCodeError, ValueError):
    pass


class LoopError(MixedCodeError):
    pass


class Overflow(MixedCodeError, OverflowError):
    pass


class MismatchFound(MixedCodeError):
    pass


class InternalError(MixedCodeError, RuntimeError):
    pass


class NotMinimalWarning(UserWarning):
    """The code handed to the secret-sharing analysis is not minimal."""
