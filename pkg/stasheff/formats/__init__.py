"""Stasheff output formats.

Every command result is a Document that any registered format can render.

Supported formats:
- JSON (json): Default; the interchange format every command also reads
- Graphviz DOT (dot): Flip graphs, links and explored balls
- Plain text (text): Short human-readable summaries

Example:
    >>> from stasheff.formats import Document, get_format
    >>> get_format("text").render(Document({"rank": 1}))
    'rank: 1'
"""

from .base import (
    Document,
    Formatter,
    Graph,
    get_format,
    is_format_available,
    register_format,
)
from .dot import DotFormatter
from .json import JsonFormatter
from .text import TextFormatter

# Register default formats
register_format(JsonFormatter())
register_format(DotFormatter())
register_format(TextFormatter())

__all__ = [
    "Document",
    "Formatter",
    "Graph",
    "get_format",
    "register_format",
    "is_format_available",
    "JsonFormatter",
    "DotFormatter",
    "TextFormatter",
]
