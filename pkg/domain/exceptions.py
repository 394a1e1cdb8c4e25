"""
Domain exceptions.

All of them are ValueErrors so callers that only care about "bad input"
can keep catching ValueError.
"""

from typing import Dict, Optional


class InstanceFormatError(ValueError):
    """Malformed instance, solution, layout or trace text."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PreconditionViolation(ValueError):
    """
    An algorithm was applied outside its graph class.

    ``witness`` maps pattern vertices to (0-based) graph vertices when an
    induced copy of the forbidden pattern was found.
    """

    def __init__(self, message: str, pattern: Optional[str] = None,
                 witness: Optional[Dict[int, int]] = None):
        self.pattern = pattern
        self.witness = witness
        super().__init__(message)


class CapExceededError(ValueError):
    """An exponential routine was asked to run beyond its configured cap."""


class NoApplicableAlgorithm(ValueError):
    """The dispatcher found no algorithm whose precondition holds."""


class LayoutMismatchError(ValueError):
    """A rooted layout does not fit the graph it is applied to."""


class VerificationFailure(ValueError):
    """A claimed solution is not a T-vertex cover or not optimal."""
