"""
Stasheff - exact computation in the infinite associahedron and Thompson's group T.

Finite associahedra, F-tessellations of the disk, the non-oriented Thompson
group T^no and its action, built on immutable dataclasses and exact dyadic
arithmetic.
"""

from stasheff.core.associahedron import PolygonTessellation
from stasheff.core.dyadic import Arc, Dyadic, DyadicInterval, StandardPartition
from stasheff.core.ftess import BASE, FTessellation
from stasheff.core.shape import LinkShape
from stasheff.core.thompson import ThompsonElement, parse_element

__version__ = "0.1.0"

__all__ = [
    "Arc",
    "BASE",
    "Dyadic",
    "DyadicInterval",
    "FTessellation",
    "LinkShape",
    "PolygonTessellation",
    "StandardPartition",
    "ThompsonElement",
    "dyadic",
    "element",
    "tessellation",
]


# Convenience functions for common operations
def dyadic(text: str) -> Dyadic:
    """Create a Dyadic from its textual form, e.g. "3/8".

    Examples:
        >>> dyadic("6/16")
        Dyadic(3, 3)
    """
    return Dyadic.parse(text)


def element(text: str) -> ThompsonElement:
    """Create a reduced T^no element from a shorthand such as "rot 1/4"."""
    return parse_element(text)


def tessellation(
    removed: list[str] | None = None, added: list[str] | None = None
) -> FTessellation:
    """Create an F-tessellation from textual arcs.

    Examples:
        >>> tessellation(["[0,1/2]"], ["[1/4,3/4]"]).rank
        0
    """
    return FTessellation(
        [Arc.parse(a) for a in removed or []], [Arc.parse(a) for a in added or []]
    )
