"""Stasheff exceptions."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from stasheff.core.ftess import Violation


class StasheffError(Exception):
    """Base exception for all Stasheff errors."""


class ParseError(StasheffError):
    """Raised when parsing a textual or JSON form fails."""


class DegenerateIntervalError(StasheffError, ValueError):
    """Raised when an interval or arc has coinciding endpoints."""


class NotStandardError(StasheffError, ValueError):
    """Raised when an interval or partition is not standard dyadic."""


class DegeneratePolygonError(StasheffError, ValueError):
    """Raised when a partition has too few intervals to span a polygon."""


class InvalidPolygonError(StasheffError, ValueError):
    """Raised for polygons with fewer than 3 vertices or bad diagonals."""


class NotTriangulationError(StasheffError, ValueError):
    """Raised when an operation needs a triangulation (rank 0)."""


class InvalidTessellationError(StasheffError, ValueError):
    """Raised when a (removed, added) pair is not an F-tessellation.

    Attributes:
        violations: Every violated condition, each naming the offending arcs
    """

    def __init__(self, violations: list[Violation]) -> None:
        self.violations = violations
        details = "; ".join(str(v) for v in violations)
        super().__init__(f"Invalid F-tessellation: {details}")


class InvalidElementError(StasheffError, ValueError):
    """Raised when interval pairs do not define an element of T^no."""


class WindowError(StasheffError, ValueError):
    """Raised when a tessellation is not supported inside a window."""


class EdgesNotConsecutiveError(StasheffError, ValueError):
    """Raised when two edges of C^1 do not share a vertex."""


class BudgetExceededError(StasheffError):
    """Raised when a search or enumeration runs out of its resource budget."""


class UnsupportedRankError(StasheffError, ValueError):
    """Raised when an operation is given a tessellation of the wrong rank."""
