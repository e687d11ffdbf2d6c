"""Exception types shared across the package.

Kept flat and in one place so the CLI can map them to exit codes.
"""


class CumuliftError(Exception):
    """Base class for all package-specific errors."""


class MalformedInput(CumuliftError):
    """Instance text could not be parsed; the message carries the position."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentCounts(MalformedInput):
    """Declared task/resource counts disagree with the actual data."""


class NegativeValue(MalformedInput):
    """A duration, demand, or capacity was negative."""


class InfeasibleTask(CumuliftError):
    """A task demands more of a resource than its capacity; no schedule exists."""


class ZeroCapacity(CumuliftError):
    """Capacity bound requested for an inequality with right-hand side 0."""


class TooLarge(CumuliftError):
    """Brute-force enumeration refused: too many columns."""


class EmptySupport(CumuliftError):
    """Span requested over an empty task set."""


class PositiveCycle(CumuliftError):
    """The precedence digraph has a cycle of positive total offset."""


class VerificationFailed(CumuliftError):
    """An inferred inequality failed the brute-force validity oracle."""
