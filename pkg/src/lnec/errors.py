"""Exception types raised across the package."""


class LNECError(Exception):
    """Base class for all package errors."""


class FieldError(LNECError, ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


class SingularMatrixError(LNECError, ValueError):
    pass


class NetworkError(LNECError, ValueError):
    """Malformed network: cycle, duplicate id, unknown node, missing source."""


class CodeFormatError(LNECError, ValueError):
    pass


class BudgetExceeded(LNECError):
    """An exhaustive enumeration would exceed its configured budget."""


class AvoidanceExhausted(LNECError):
    """Every candidate vector lies in some forbidden subspace."""


class ConstructionError(LNECError):
    """A code construction could not complete.

    ``details`` carries structured diagnostics (blocked channel, offending
    sink/pattern pairs, field-size bound, failure tallies) so callers can
    report them without parsing the message.
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class DecodeError(LNECError, ValueError):
    pass


class UndefinedDistance(LNECError, ValueError):
    """Minimum distance requested where the message space is zero."""
