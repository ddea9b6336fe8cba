"""Exception types shared across the toolkit.

The CLI maps these onto exit codes, so user-facing failure modes each get
their own class instead of a bare ValueError.
"""

from __future__ import annotations


class CoocmineError(Exception):
    """Base class for all toolkit errors."""


class UnknownClassError(CoocmineError):
    """A class id or class name is not present in the governing vocabulary."""


class EmptyDatabaseError(CoocmineError):
    """An operation that needs at least one transaction got none."""


class EmptyRestrictionError(CoocmineError):
    """Restricting to a base class left no transactions."""


class ParseError(CoocmineError):
    """A line of an input file could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class FormatError(CoocmineError):
    """An input file violates its schema."""


class ReferentialIntegrityError(FormatError):
    """An annotation references an image or category that does not exist."""


class InternalConsistencyError(CoocmineError):
    """A data structure violates an invariant the code relies on."""


class SizeGuardError(CoocmineError):
    """An input exceeds a hard size guard (brute-force enumeration)."""


class NoEvaluableClassesError(CoocmineError):
    """Evaluation was requested but no class has any ground truth."""
