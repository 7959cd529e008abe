"""Graphviz DOT output format."""

from __future__ import annotations

from .base import Document, Formatter


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


class DotFormatter(Formatter):
    """Undirected DOT graphs for flip graphs, links and explored balls."""

    def __init__(self):
        super().__init__("dot", "Graphviz DOT")

    def render(self, document: Document) -> str:
        graph = document.graph
        if graph is None:
            raise ValueError("This result has no graph view; use json or text")
        lines = [f"graph {_quote(graph.name)} {{"]
        lines.extend(
            f"  {_quote(node)} [label={_quote(label)}];" for node, label in graph.nodes
        )
        for first, second, label in graph.edges:
            attributes = f" [label={_quote(label)}]" if label else ""
            lines.append(f"  {_quote(first)} -- {_quote(second)}{attributes};")
        lines.append("}")
        return "\n".join(lines)
