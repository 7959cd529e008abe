"""Link shapes for Stasheff.

The F-triangulations containing an F-tessellation of rank 2 or 3 form the
boundary of its cell. This module names the five shapes that can occur, keyed
by the side counts of the non-triangular components.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Iterable, Literal

from stasheff.core.exceptions import UnsupportedRankError

ShapeName = Literal["square-cycle", "pentagon-cycle", "cube", "prism", "associahedron"]


@dataclass(frozen=True, slots=True)
class LinkShape:
    """A named link shape with its component sizes and vertex count.

    Examples:
        >>> LinkShape.for_factor_sizes([4, 5]).vertex_count
        10
        >>> str(LinkShape.PENTAGON_CYCLE)
        'pentagon-cycle'
    """

    name: ShapeName
    factor_sizes: tuple[int, ...]
    vertex_count: int

    SQUARE_CYCLE: ClassVar[LinkShape]
    PENTAGON_CYCLE: ClassVar[LinkShape]
    CUBE: ClassVar[LinkShape]
    PRISM: ClassVar[LinkShape]
    ASSOCIAHEDRON: ClassVar[LinkShape]

    @property
    def rank(self) -> int:
        return sum(size - 3 for size in self.factor_sizes)

    @property
    def is_cycle(self) -> bool:
        return self.rank == 2

    @classmethod
    def for_factor_sizes(cls, sizes: Iterable[int]) -> LinkShape:
        """Look up the shape for the given component side counts.

        Raises:
            UnsupportedRankError: If the components do not add up to rank 2 or 3
        """
        key = tuple(sorted(sizes))
        for shape in _SHAPES:
            if shape.factor_sizes == key:
                return shape
        raise UnsupportedRankError(
            f"No link shape for components {list(key)}; only ranks 2 and 3 are classified"
        )

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"LinkShape.{self.name.upper().replace('-', '_')}"


SQUARE_CYCLE = LinkShape("square-cycle", (4, 4), 4)
PENTAGON_CYCLE = LinkShape("pentagon-cycle", (5,), 5)
CUBE = LinkShape("cube", (4, 4, 4), 8)
PRISM = LinkShape("prism", (4, 5), 10)
ASSOCIAHEDRON = LinkShape("associahedron", (6,), 14)

_SHAPES = (SQUARE_CYCLE, PENTAGON_CYCLE, CUBE, PRISM, ASSOCIAHEDRON)

LinkShape.SQUARE_CYCLE = SQUARE_CYCLE
LinkShape.PENTAGON_CYCLE = PENTAGON_CYCLE
LinkShape.CUBE = CUBE
LinkShape.PRISM = PRISM
LinkShape.ASSOCIAHEDRON = ASSOCIAHEDRON
