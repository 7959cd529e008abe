"""JSON output format."""

from __future__ import annotations

import json

from .base import Document, Formatter


class JsonFormatter(Formatter):
    """Deterministic JSON: sorted keys, two-space indentation."""

    def __init__(self):
        super().__init__("json", "JSON")

    def render(self, document: Document) -> str:
        return json.dumps(document.data, sort_keys=True, indent=2)
