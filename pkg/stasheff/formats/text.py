"""Plain-text output format."""

from __future__ import annotations

import json
from typing import Any

from .base import Document, Formatter


def _flatten(value: Any, prefix: str = "") -> list[str]:
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            lines.extend(_flatten(value[key], f"{prefix}{key}."))
        return lines
    return [f"{prefix[:-1]}: {json.dumps(value)}"]


class TextFormatter(Formatter):
    """The command's summary lines, or "key: value" lines when it has none."""

    def __init__(self):
        super().__init__("text", "Plain text")

    def render(self, document: Document) -> str:
        if document.summary:
            return "\n".join(document.summary)
        return "\n".join(_flatten(document.data))
