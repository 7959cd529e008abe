"""F-tessellations of the disk for Stasheff.

An F-tessellation is a finite modification of the base triangulation A_F:
(A_F - removed) | added, where removed is a finite set of A_F arcs and added a
finite set of dyadic arcs outside A_F. This module validates such pairs and
computes their rank, non-triangular components, cells, intersections, the
partial order, the support polygon and flips.

All modifications of a tessellation live inside its support polygon, so every
check here is a finite computation on that window.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from stasheff.core.associahedron import (
    PolygonTessellation,
    enumerate_triangulations,
    split_polygon,
)
from stasheff.core.dyadic import (
    HALF,
    Arc,
    Dyadic,
    StandardPartition,
    arcs_cross,
    base_arcs_in_window,
    base_diagonals_in_window,
    in_base_triangulation,
)
from stasheff.core.exceptions import (
    BudgetExceededError,
    InvalidPolygonError,
    InvalidTessellationError,
    NotTriangulationError,
    ParseError,
    WindowError,
)
from stasheff.core.types import DEFAULT_RANK_BOUND, ViolationKind

_VIOLATION_ORDER: dict[str, int] = {
    "redundant": 0,
    "removed-not-base": 1,
    "added-in-base": 2,
    "crossing": 3,
}


@dataclass(frozen=True, slots=True)
class Violation:
    """One violated F-tessellation condition and the arcs responsible."""

    kind: ViolationKind
    arcs: tuple[Arc, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "arcs": [str(a) for a in self.arcs]}

    def __str__(self) -> str:
        return f"{self.kind} " + " ".join(str(a) for a in self.arcs)


def _as_arc(value: Arc | str | Sequence[str]) -> Arc:
    if isinstance(value, Arc):
        return value
    if isinstance(value, str):
        return Arc.parse(value)
    if len(value) != 2:
        raise ParseError(f"An arc needs two endpoints, got {value!r}")
    return Arc(str(value[0]), str(value[1]))


def _coarsest_window(
    points: Iterable[Dyadic], removed: frozenset[Arc]
) -> StandardPartition:
    window = StandardPartition.coarsest_containing(points)
    if len(window) == 1:
        window = StandardPartition.coarsest_containing([HALF])
    if len(window) == 2:
        last = window.intervals[-1]
        window = StandardPartition([window.intervals[0], *last.children()])
    while True:
        side = next(
            (i for i in window.intervals if i.chord() in removed),
            None,
        )
        if side is None:
            return window
        window = StandardPartition(
            piece
            for interval in window.intervals
            for piece in (interval.children() if interval == side else (interval,))
        )


@lru_cache(maxsize=4096)
def _support(removed: frozenset[Arc], added: frozenset[Arc]) -> StandardPartition:
    points = {p for a in removed | added for p in a.endpoints}
    base_removed = frozenset(a for a in removed if in_base_triangulation(a))
    return _coarsest_window(points, base_removed)


def find_violations(
    removed: Iterable[Arc], added: Iterable[Arc]
) -> list[Violation]:
    """List every reason why (removed, added) fails to be an F-tessellation.

    Reported kinds: "redundant" (an arc listed more than once), "removed-not-base",
    "added-in-base" and "crossing" (an added arc crossing a retained A_F arc
    or another added arc).

    Listing an arc twice is the only way a delta can hold a redundant arc.
    Every complementary region of a valid delta is a union of finitely many
    A_F triangles, so it is a finite polygon and no arc can be dropped
    without changing the subdivision.

    Args:
        removed: A_F arcs to drop
        added: Non-A_F arcs to insert

    Returns:
        The violations, grouped by kind and then sorted by arcs; empty when
        (removed, added) is an F-tessellation
    """
    removed_list = list(removed)
    added_list = list(added)
    violations = [
        Violation("redundant", (arc,))
        for arc, count in Counter(removed_list + added_list).items()
        if count > 1
    ]
    violations.extend(
        Violation("removed-not-base", (arc,))
        for arc in set(removed_list)
        if not in_base_triangulation(arc)
    )
    violations.extend(
        Violation("added-in-base", (arc,))
        for arc in set(added_list)
        if in_base_triangulation(arc)
    )

    removed_set = frozenset(removed_list)
    clean_added = sorted(a for a in set(added_list) if not in_base_triangulation(a))
    window = _support(removed_set, frozenset(clean_added))
    retained = sorted(base_diagonals_in_window(window) - removed_set)
    for arc in clean_added:
        violations.extend(
            Violation("crossing", (arc, other))
            for other in retained
            if arcs_cross(arc, other)
        )
    for first, second in itertools.combinations(clean_added, 2):
        if arcs_cross(first, second):
            violations.append(Violation("crossing", (first, second)))
    violations.sort(key=lambda v: (_VIOLATION_ORDER[v.kind], v.arcs))
    return violations


@dataclass(frozen=True, slots=True)
class FTessellation:
    """An F-tessellation, named by its delta (removed, added) against A_F.

    The delta is unique, so structural equality is equality of tessellations.

    Attributes:
        removed: A_F arcs missing from the tessellation
        added: Arcs outside A_F belonging to the tessellation

    Examples:
        >>> edge = FTessellation(removed=[Arc.parse("[0,1/2]")])
        >>> edge.rank
        1
        >>> str(edge)
        'A_F - {[0,1/2]}'
        >>> [str(v) for v in find_violations([], [Arc.parse("[1/4,3/4]")])]
        ['crossing [1/4,3/4] [0,1/2]']
    """

    removed: frozenset[Arc]
    added: frozenset[Arc]

    def __init__(
        self,
        removed: Iterable[Arc] = (),
        added: Iterable[Arc] = (),
    ) -> None:
        """Create and validate an F-tessellation.

        Raises:
            InvalidTessellationError: If any condition fails; the error carries
                every violation
        """
        removed_list = list(removed)
        added_list = list(added)
        violations = find_violations(removed_list, added_list)
        if violations:
            raise InvalidTessellationError(violations)
        object.__setattr__(self, "removed", frozenset(removed_list))
        object.__setattr__(self, "added", frozenset(added_list))

    @classmethod
    def _trusted(cls, removed: Iterable[Arc], added: Iterable[Arc]) -> FTessellation:
        # Results of operations closed on F-tessellations skip revalidation.
        instance = object.__new__(cls)
        object.__setattr__(instance, "removed", frozenset(removed))
        object.__setattr__(instance, "added", frozenset(added))
        return instance

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> FTessellation:
        """Build from {"removed": [...], "added": [...]}.

        Arcs may be written "[a,b]" or as a two-element list ["a", "b"].

        Raises:
            ParseError: If the document or an arc is malformed
            InvalidTessellationError: If the arcs do not form an F-tessellation
        """
        if not isinstance(data, dict):
            raise ParseError(f"Expected a JSON object, got {type(data).__name__}")
        unknown = set(data) - {"removed", "added"}
        if unknown:
            raise ParseError(f"Unknown tessellation keys: {sorted(unknown)}")
        return cls(
            [_as_arc(a) for a in data.get("removed", [])],
            [_as_arc(a) for a in data.get("added", [])],
        )

    def to_dict(self) -> dict[str, list[str]]:
        return {
            "removed": [str(a) for a in sorted(self.removed)],
            "added": [str(a) for a in sorted(self.added)],
        }

    @property
    def rank(self) -> int:
        return len(self.removed) - len(self.added)

    @property
    def is_triangulation(self) -> bool:
        return self.rank == 0

    @property
    def support(self) -> StandardPartition:
        return _support(self.removed, self.added)

    @property
    def sort_key(self) -> tuple[tuple[Arc, ...], tuple[Arc, ...]]:
        return (tuple(sorted(self.removed)), tuple(sorted(self.added)))

    def contains_arc(self, a: Arc) -> bool:
        if in_base_triangulation(a):
            return a not in self.removed
        return a in self.added

    def without_arc(self, a: Arc) -> FTessellation:
        """Drop one arc (the result has rank one higher).

        Raises:
            InvalidPolygonError: If a is not an arc of this tessellation
        """
        if not self.contains_arc(a):
            raise InvalidPolygonError(f"{a} is not an arc of {self}")
        if a in self.added:
            return FTessellation._trusted(self.removed, self.added - {a})
        return FTessellation._trusted(self.removed | {a}, self.added)

    def with_arc(self, a: Arc) -> FTessellation:
        """Insert one arc; it must not cross the tessellation."""
        if in_base_triangulation(a):
            return FTessellation(self.removed - {a}, self.added)
        return FTessellation(self.removed, self.added | {a})

    def arcs_within(self, window: StandardPartition) -> frozenset[Arc]:
        """Every arc of the tessellation inside or on the window polygon.

        The window must refine the support polygon: holding the endpoints of
        the removed and added arcs is not enough. A coarser window can have a
        removed arc as a side, or leave out vertices of a non-triangular
        component, and the arcs it sees no longer determine the tessellation.

        Args:
            window: A partition whose breakpoints include every breakpoint of
                the support

        Returns:
            The sides of the window polygon and the diagonals of the
            tessellation inside it

        Raises:
            WindowError: If window does not refine the support polygon
        """
        if not window.is_refinement_of(self.support):
            raise WindowError(f"Support of {self} is not inside window {window}")
        return (base_arcs_in_window(window) - self.removed) | self.added

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, FTessellation):
            return NotImplemented
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        text = "A_F"
        if self.removed:
            text += " - {" + ", ".join(str(a) for a in sorted(self.removed)) + "}"
        if self.added:
            text += " + {" + ", ".join(str(a) for a in sorted(self.added)) + "}"
        return text

    def __repr__(self) -> str:
        return f"FTessellation.from_dict({self.to_dict()!r})"


BASE = FTessellation()


def validate(removed: Iterable[Arc], added: Iterable[Arc]) -> FTessellation:
    """Validate a (removed, added) pair.

    Args:
        removed: A_F arcs to drop
        added: Non-A_F arcs to insert

    Returns:
        The F-tessellation A_F - removed + added

    Raises:
        InvalidTessellationError: With every violation found
    """
    return FTessellation(removed, added)


def rank(b: FTessellation) -> int:
    """|removed| - |added|: the number of arcs completing b to a triangulation."""
    return b.rank


def support_polygon(b: FTessellation) -> StandardPartition:
    """The coarsest A_F-inscribed polygon holding every modification of b.

    Its breakpoints include every endpoint of a removed or added arc, and every
    removed arc is one of its diagonals. It has at least three vertices and
    always contains the center of the disk; for A_F itself it is the triangle
    0 < 1/2 < 3/4.

    Examples:
        >>> str(support_polygon(BASE))
        '0,1/2,3/4'
        >>> str(support_polygon(FTessellation(removed=[Arc.parse("[1/4,1/2]")])))
        '0,1/4,3/8,1/2'
    """
    return b.support


@lru_cache(maxsize=4096)
def _components(b: FTessellation) -> tuple[tuple[Dyadic, ...], ...]:
    window = b.support
    diagonals = (base_diagonals_in_window(window) - b.removed) | b.added
    regions = split_polygon(window.breakpoints, [a.endpoints for a in sorted(diagonals)])
    return tuple(region for region in regions if len(region) >= 4)


def nontriangular_components(b: FTessellation) -> list[tuple[Dyadic, ...]]:
    """The complementary regions of b with at least four sides.

    Each region is its vertex list in increasing (counterclockwise) order.
    The list is empty exactly when b is an F-triangulation.

    Args:
        b: An F-tessellation

    Returns:
        One vertex tuple per component
    """
    return list(_components(b))


@dataclass(frozen=True, slots=True)
class CellDescriptor:
    """The cell f_b: a product of associahedra A(P_n_i), one per component."""

    index: FTessellation
    factor_sizes: tuple[int, ...]
    dimension: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index.to_dict(),
            "factor_sizes": list(self.factor_sizes),
            "dimension": self.dimension,
        }


def cell_of(b: FTessellation) -> CellDescriptor:
    """Describe the cell indexed by b.

    Args:
        b: The F-tessellation indexing the cell

    Returns:
        The index, the sizes of the associahedron factors and the dimension

    Examples:
        >>> cell_of(FTessellation(removed=[Arc.parse("[0,1/2]")])).factor_sizes
        (4,)
    """
    sizes = tuple(sorted(len(region) for region in _components(b)))
    return CellDescriptor(index=b, factor_sizes=sizes, dimension=b.rank)


def intersect(a: FTessellation, b: FTessellation) -> FTessellation:
    """The tessellation whose arcs are common to a and b.

    Its cell is the smallest one having the cells of a and b as faces.
    Commutative and associative.

    Args:
        a: An F-tessellation
        b: Another F-tessellation

    Returns:
        A_F minus the arcs removed by either, plus the arcs added by both
    """
    return FTessellation._trusted(a.removed | b.removed, a.added & b.added)


def leq(a: FTessellation, b: FTessellation) -> bool:
    """Check a <= b: every arc of b is an arc of a, so the cell of a is a face
    of the cell of b.

    Args:
        a: The candidate face
        b: The candidate cell

    Returns:
        True if the cell of a is a face of the cell of b
    """
    return a.removed <= b.removed and b.added <= a.added


def containing_triangulations(
    b: FTessellation, *, bound: int = DEFAULT_RANK_BOUND
) -> list[FTessellation]:
    """All F-triangulations containing b: the vertices of its cell.

    Args:
        b: The F-tessellation indexing the cell
        bound: Largest rank to enumerate

    Returns:
        The containing F-triangulations in canonical order

    Raises:
        BudgetExceededError: If the rank of b exceeds bound
    """
    if b.rank > bound:
        raise BudgetExceededError(f"Rank {b.rank} exceeds the enumeration bound {bound}")
    choices = []
    for region in _components(b):
        choices.append(
            [
                [Arc(region[i - 1], region[j - 1]) for i, j in t.sorted_diagonals]
                for t in enumerate_triangulations(len(region))
            ]
        )
    found = []
    for combination in itertools.product(*choices):
        arcs = [arc for group in combination for arc in group]
        found.append(
            FTessellation._trusted(
                b.removed - set(arcs),
                b.added | {a for a in arcs if not in_base_triangulation(a)},
            )
        )
    return sorted(found)


def flip_arc(a: FTessellation, arc: Arc) -> tuple[FTessellation, Arc]:
    """Remove arc from the F-triangulation a.

    Args:
        a: An F-triangulation
        arc: One of its arcs

    Returns:
        The rank-1 tessellation a - {arc} and the other diagonal of its single
        square component

    Raises:
        NotTriangulationError: If a has nonzero rank
        InvalidPolygonError: If arc is not an arc of a

    Examples:
        >>> edge, new = flip_arc(BASE, Arc.parse("[0,1/4]"))
        >>> str(new)
        '[1/8,1/2]'
    """
    if not a.is_triangulation:
        raise NotTriangulationError(f"{a} is not an F-triangulation")
    edge = a.without_arc(arc)
    (square,) = _components(edge)
    first, second = Arc(square[0], square[2]), Arc(square[1], square[3])
    return edge, second if first == arc else first


def flip(a: FTessellation, arc: Arc) -> FTessellation:
    """The F-triangulation obtained from a by flipping arc.

    Args:
        a: An F-triangulation
        arc: One of its arcs

    Returns:
        The adjacent F-triangulation, sharing every arc of a but arc

    Raises:
        NotTriangulationError: If a is not an F-triangulation
        InvalidPolygonError: If arc is not an arc of a
    """
    edge, new = flip_arc(a, arc)
    if in_base_triangulation(new):
        return FTessellation._trusted(edge.removed - {new}, edge.added)
    return FTessellation._trusted(edge.removed, edge.added | {new})


def window_polygon(b: FTessellation, window: StandardPartition) -> PolygonTessellation:
    """Read b inside a window as a tessellation of P_k, k = len(window).

    Breakpoints of the window are labeled 1..k in increasing order.

    Args:
        b: An F-tessellation
        window: A partition refining the support polygon of b

    Returns:
        The diagonals of b inside the window, as a tessellation of P_k

    Raises:
        WindowError: If window does not refine the support polygon of b
        DegeneratePolygonError: If the window has fewer than 3 intervals
    """
    label = {point: k for k, point in enumerate(window.breakpoints, start=1)}
    arcs = b.arcs_within(window) - window.sides()
    return PolygonTessellation(
        len(window), [(label[a.start], label[a.end]) for a in arcs]
    )


def from_window_polygon(t: PolygonTessellation, window: StandardPartition) -> FTessellation:
    """The F-tessellation agreeing with A_F outside window and with t inside.

    Args:
        t: A tessellation of P_k, vertex i standing for the i-th breakpoint
        window: A partition with k intervals

    Returns:
        The F-tessellation read back as a delta against A_F

    Raises:
        WindowError: If t is not a tessellation of a polygon of the window's size
    """
    if t.n != len(window):
        raise WindowError(f"{t} does not fit a window with {len(window)} vertices")
    points = window.breakpoints
    arcs = {Arc(points[i - 1], points[j - 1]) for i, j in t.diagonals}
    return FTessellation._trusted(
        base_diagonals_in_window(window) - arcs,
        {a for a in arcs if not in_base_triangulation(a)},
    )
