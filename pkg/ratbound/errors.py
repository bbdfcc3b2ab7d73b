"""
Exception Types
===============

All errors raised by ratbound derive from :class:`RatboundError`, which is a
``ValueError`` so callers that already guard input validation keep working.
"""

from __future__ import annotations


class RatboundError(ValueError):
    """Base class for every error raised by this package."""


class PreconditionError(RatboundError):
    """An operation was called with arguments outside its documented domain."""


class SystemValidationError(RatboundError):
    """A rational system violates one or more model invariants.

    Attributes:
        violations: Every violation found, in the order they were detected.
    """

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("Invalid rational system: " + "; ".join(self.violations))


class DocumentError(RatboundError):
    """A system document does not match the schema.

    Attributes:
        violations: ``(json_pointer, message)`` pairs, one per problem.
    """

    def __init__(self, violations: list[tuple[str, str]]) -> None:
        self.violations = list(violations)
        rendered = "; ".join(f"{path or '/'}: {msg}" for path, msg in self.violations)
        super().__init__(f"Invalid system document: {rendered}")


class TableError(RatboundError):
    """The theorem table or one of its set expressions is malformed."""
