"""Exception types raised by the toolkit."""
from __future__ import annotations


class TckitError(Exception):
    """Base class for all toolkit errors."""


class InvalidPartition(TckitError, ValueError):
    """A pair of vertex sets is not a partition of the vertex set."""


class InvalidArgument(TckitError, ValueError):
    """An argument violates a documented precondition."""


class InfeasibleConstraint(TckitError, ValueError):
    """No edge-cut can satisfy the requested incidence constraints."""


class CapacityError(TckitError):
    """The instance exceeds the documented size ceiling of an exhaustive search."""


class ParseError(TckitError, ValueError):
    """A text file does not follow the expected format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class AlignmentError(TckitError, ValueError):
    """A cut cannot be aligned with the subtrees hanging off an anchor."""

    def __init__(self, message: str, tree_edge=None):
        self.tree_edge = tree_edge
        super().__init__(message)


class PreconditionError(TckitError, ValueError):
    """An object does not satisfy the structural precondition of an operation."""
