"""Exception hierarchy shared by every module.

The CLI maps each class onto a fixed exit code, so raise the most specific
one that applies.
"""


class CFColorError(Exception):
    """Base class for all errors raised by :mod:`cfcolor`."""

    exit_code = 4


class ParseError(CFColorError):
    """Malformed graph, decomposition, coloring or certificate text."""

    exit_code = 1

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphValidationError(ParseError):
    """Text parsed but describes something that is not a simple graph."""


class PreconditionError(CFColorError):
    """Input violates an algorithm's entry conditions (isolated vertex, bad certificate, ...)."""

    exit_code = 2


class OracleCapExceeded(CFColorError):
    """An exact search was asked to run on an instance above its size cap."""

    exit_code = 3


class InvariantViolation(CFColorError):
    """An internal invariant failed. Always a bug."""

    exit_code = 4
