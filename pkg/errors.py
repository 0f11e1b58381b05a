#!/usr/bin/env python3
"""
Error types for the JCD toolkit.
Every error carries a detail message and the exit code the CLI maps it to.
"""

from typing import Optional


class JcdError(Exception):
    """Base error. `exit_code` is what run.py exits with."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class StructuralError(JcdError):
    """Dimension mismatch, band index out of range, singular matrix."""

    exit_code = 3


class PreconditionError(JcdError):
    """An input fails a named predicate of the operation it was passed to."""

    exit_code = 3

    def __init__(self, predicate: str, detail: Optional[str] = None):
        super().__init__(detail or f"precondition failed: {predicate}")
        self.predicate = predicate


class UnsupportedFieldError(PreconditionError):
    """The computation would leave the rationals."""


class InvariantViolation(JcdError):
    """An internal guarantee broke. Always a bug, never bad input."""

    exit_code = 1


class ParseError(JcdError):
    exit_code = 2


class ConfigError(JcdError):
    exit_code = 2


class CheckFailure(JcdError):
    """One or more verification checks failed."""

    exit_code = 1

    def __init__(self, failed: list):
        super().__init__("failed checks: " + ", ".join(failed))
        self.failed = list(failed)
