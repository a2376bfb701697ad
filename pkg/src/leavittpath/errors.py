"""Exception types shared across the package."""

from __future__ import annotations


class LpaError(Exception):
    """Base class for all library errors."""


class GraphSyntaxError(LpaError):
    """Text-format parse error, with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class GraphValidationError(LpaError):
    """A programmatically constructed graph violates a structural invariant."""


class ExpressionError(LpaError):
    """Algebra-expression parse or generator-resolution error."""

    def __init__(self, message: str, column: int | None = None):
        if column is not None:
            message = f"column {column}: {message}"
        super().__init__(message)
        self.column = column


class InvariantViolation(LpaError):
    """An internal consistency check failed.

    Carries enough context to reproduce: the canonical graph text (when one
    is available) and a human-readable detail string.
    """

    def __init__(self, detail: str, graph_text: str | None = None):
        super().__init__(detail)
        self.detail = detail
        self.graph_text = graph_text
