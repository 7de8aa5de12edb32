from __future__ import annotations


class NilverifyError(Exception):
    """Base class for all engine errors."""


class DomainError(NilverifyError, ValueError):
    """An operation was applied outside the set where it is defined."""


class PreconditionError(NilverifyError, ValueError):
    """An input violated a documented precondition."""


class ConfigError(NilverifyError):
    """A manifold description could not be parsed or validated."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None, kind: str = "syntax"):
        self.message = message
        self.line = line
        self.column = column
        self.kind = kind
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(f"{loc}{message}")
