"""Exception types shared across the package."""
from __future__ import annotations


class E8BoundsError(Exception):
    """Base class for all package errors."""


class ConfigError(E8BoundsError):
    """A graph violates the admissible configuration invariants."""


class ParseError(E8BoundsError):
    """Malformed text input; carries the offending position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class MoveError(E8BoundsError):
    """A blow-up/blow-down move is not applicable."""


class SeifertError(E8BoundsError):
    """Invalid Seifert or Brieskorn data."""
