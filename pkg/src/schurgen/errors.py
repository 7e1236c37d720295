"""Exception hierarchy shared by every module in the package."""


class SchurgenError(Exception):
    """Base class for all package errors."""


class PreconditionError(SchurgenError, ValueError):
    """An operation was called with inputs outside its domain."""


class OddOrderError(PreconditionError):
    """A set that must have even cardinality has odd cardinality."""


class NotBelowError(PreconditionError):
    """``max(A) < min(B)`` was required but does not hold."""


class NotSubsetError(PreconditionError):
    pass


class NotConsecutiveError(PreconditionError):
    """The excised set skips over an element of the enclosing set."""


class ParityError(PreconditionError):
    """The number of elements above the excised block is not odd."""


class BudgetExceeded(SchurgenError, RuntimeError):
    """A search ran out of its node budget before reaching a verdict.

    This is never a mathematical answer: the caller learns only that the
    configured budget was too small.
    """

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class FormatError(SchurgenError, ValueError):
    """A text or JSON document does not follow the documented layout."""
