"""Exception hierarchy shared by every module of the package."""


class ComplexityError(Exception):
    """Base class for all errors raised by intcomplexity."""


class EmptyRangeError(ComplexityError, ValueError):
    pass


class RangeError(ComplexityError, IndexError):
    pass


class CapacityError(ComplexityError, OverflowError):
    pass


class DomainError(ComplexityError, ValueError):
    pass


class InvariantViolation(ComplexityError):
    """A computed object failed one of its structural invariants."""


class ParseError(ComplexityError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class TableFormatError(ComplexityError, ValueError):
    """Raised when a persisted table cannot be decoded."""


class BadMagicError(TableFormatError):
    pass


class VersionMismatchError(TableFormatError):
    pass


class TruncatedPayloadError(TableFormatError):
    pass
