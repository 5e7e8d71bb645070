"""Error types shared by every stage of the checker."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError(f"invalid source position {self.line}:{self.column}")

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class CheckerError(Exception):
    """Base class; carries an optional source span."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        super().__init__(f"{span}: {message}" if span else message)


class ParseError(CheckerError):
    def __init__(self, message, span=None, expected=()):
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(message, span)


class DuplicateDeclaration(CheckerError):
    pass


class UnknownName(CheckerError):
    pass


class UnboundFixpointVariable(CheckerError):
    pass


class NonMonotoneFixpoint(CheckerError):
    pass


class TypeCheckError(CheckerError):
    pass


class EvalError(CheckerError):
    pass


class UnboundVariable(EvalError):
    pass


class UnboundedDomain(CheckerError):
    pass


class UnguardedRecursion(CheckerError):
    pass


class StateLimitExceeded(CheckerError):
    pass


class InstantiationLimitExceeded(CheckerError):
    pass


class NoEvidence(CheckerError):
    """No linear evidence exists; ``evidence`` holds the usable prefix."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence
