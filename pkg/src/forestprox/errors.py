"""Exception types shared across the package.

Everything user-facing derives from :class:`ValidationError` so the command
line can map bad input to a single exit code.
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Base class for rejected input or violated preconditions."""


class VertexRangeError(ValidationError):
    """An endpoint lies outside ``0 .. n-1``."""


class SelfLoopError(ValidationError):
    """An edge joins a vertex to itself."""


class NonPositiveWeightError(ValidationError):
    """An edge weight is zero or negative."""


class OrientationError(ValidationError):
    """The operation requires the other orientation (directed/undirected)."""


class PartitionError(ValidationError):
    """A vertex partition does not cover ``0 .. n-1`` exactly once."""


class SizeGuardError(ValidationError):
    """An exhaustive routine was asked to run on an oversized instance."""


class SingularMatrixError(ValidationError):
    """The linear system is singular or numerically untrustworthy."""


class AsymmetryError(ValidationError):
    """A matrix that must be symmetric is asymmetric beyond tolerance."""


class InvariantError(ValidationError):
    """A computed result violates a mathematical invariant it must satisfy."""


class IncrementError(ValidationError):
    """An edge increment is malformed (equal endpoints or delta <= 0)."""


class ConfigError(ValidationError):
    """A run configuration value is out of range or unparseable."""


class ParseError(ValidationError):
    """Input text could not be parsed.  Carries a position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)
