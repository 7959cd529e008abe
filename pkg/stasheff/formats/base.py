"""Base output-format infrastructure for Stasheff."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict


@dataclass(frozen=True, slots=True)
class Graph:
    """A finite undirected graph to export (flip graphs, links, balls).

    Attributes:
        name: Graph title
        nodes: (node id, label) pairs
        edges: (node id, node id, label) triples; label may be empty
    """

    name: str
    nodes: tuple[tuple[str, str], ...]
    edges: tuple[tuple[str, str, str], ...] = ()


@dataclass(frozen=True, slots=True)
class Document:
    """The result of one command, ready to be rendered in any format.

    Attributes:
        data: JSON-compatible payload
        summary: Human-readable lines for the text format
        graph: Graph view of the result, if it has one
    """

    data: Dict[str, Any]
    summary: tuple[str, ...] = ()
    graph: Graph | None = field(default=None)


class Formatter(ABC):
    """Abstract base class for output formats."""

    def __init__(self, code: str, name: str):
        self.code = code
        self.name = name

    @abstractmethod
    def render(self, document: Document) -> str:
        """Render a command result.

        Args:
            document: The result to render

        Returns:
            The rendered text, without a trailing newline

        Raises:
            ValueError: If the document has no view in this format
        """
        pass


# Global registry of formats
_FORMATS: Dict[str, Formatter] = {}


def register_format(formatter: Formatter) -> None:
    """Register a format in the global registry."""
    _FORMATS[formatter.code] = formatter


def is_format_available(code: str) -> bool:
    """Check if a format is available.

    Args:
        code: Format code (e.g., "json", "dot")

    Returns:
        True if the format is registered, False otherwise
    """
    return code in _FORMATS


def get_format(code: str | None) -> Formatter:
    """Get a format by code, defaulting to JSON if None.

    Args:
        code: Format code (e.g., "json", "text") or None for default

    Returns:
        Formatter instance

    Raises:
        ValueError: If format code is not supported
    """
    if code is None:
        code = "json"

    if code not in _FORMATS:
        raise ValueError(f"Unsupported format: {code}")

    return _FORMATS[code]
