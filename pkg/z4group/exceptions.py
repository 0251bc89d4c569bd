class Z4GroupError(Exception):
    """Base class for every error raised by z4group."""


class DimensionMismatchError(Z4GroupError, ValueError):
    pass


class SingularMatrixError(Z4GroupError, ZeroDivisionError):
    pass


class GroupTooLargeError(Z4GroupError, RuntimeError):
    """Closure exceeded the element cap: the group is too large or infinite."""


class MalformedWordError(Z4GroupError, ValueError):
    pass


class UnsupportedInputError(Z4GroupError, ValueError):
    pass


class ElementNotFoundError(Z4GroupError, KeyError):
    pass


class ClassOrderingError(Z4GroupError, RuntimeError):
    """A named class representative could not be matched to a computed class."""


class TranscriptionError(Z4GroupError, RuntimeError):
    """A transcribed matrix or formula fails its defining relations."""


class NotACharacterError(Z4GroupError, ValueError):
    pass


class ArithmeticConsistencyError(Z4GroupError, ArithmeticError):
    pass


class UsageError(Z4GroupError):
    pass
