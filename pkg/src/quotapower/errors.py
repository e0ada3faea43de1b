"""Exception hierarchy shared by every quotapower module."""


class QuotaPowerError(Exception):
    """Base class for all library errors."""


class InputError(QuotaPowerError, ValueError):
    """Invalid user-supplied data (weights, quotas, options)."""


class WeightsParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DegenerateError(QuotaPowerError, ValueError):
    """A measure is undefined for the given input (zero variance, zero sum, ...)."""


class GameSizeError(QuotaPowerError, ValueError):
    """Game too large for the requested exhaustive computation."""


class IntegrityError(QuotaPowerError, ArithmeticError):
    """An exact computation produced an impossible intermediate value."""


class ResourceError(QuotaPowerError, MemoryError):
    """A coefficient table could not be allocated."""
