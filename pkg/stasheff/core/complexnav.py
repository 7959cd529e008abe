"""Local navigation in the infinite associahedron C for Stasheff.

Vertices of C are F-triangulations and edges are flips. Every vertex has
infinitely many neighbors, so searches run inside a window: a standard dyadic
partition whose inscribed polygon holds the supports of the query. Inside a
window with k vertices an F-triangulation is a triangulation of P_k, so window
searches run on the flip graph of A(P_k). Distances are therefore
window-certified upper bounds.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass
from functools import reduce
from typing import Any, Iterator

from stasheff.core.associahedron import PolygonTessellation, flip
from stasheff.core.dyadic import Arc, StandardPartition, refine_common
from stasheff.core.exceptions import (
    BudgetExceededError,
    DegeneratePolygonError,
    EdgesNotConsecutiveError,
    NotTriangulationError,
    UnsupportedRankError,
)
from stasheff.core.ftess import (
    BASE,
    FTessellation,
    containing_triangulations,
    find_violations,
    from_window_polygon,
    intersect,
    nontriangular_components,
    window_polygon,
)
from stasheff.core.sampling import random_triangulation
from stasheff.core.shape import LinkShape
from stasheff.core.thompson import ThompsonElement, act_tessellation
from stasheff.core.types import DEFAULT_MAX_EXPANSIONS, DEFAULT_MAX_STATES

logger = logging.getLogger(__name__)

EIGHT_GON = StandardPartition.parse("0,1/8,1/4,3/8,1/2,5/8,3/4,7/8")


@dataclass(frozen=True, slots=True)
class WindowPolicy:
    """Where and how far a search in C may look.

    Attributes:
        base: The first exploration window
        max_expansions: How many times the window may be subdivided
        max_states: Budget of triangulations one search may visit

    Examples:
        >>> square = StandardPartition.parse("0,1/4,1/2,3/4")
        >>> policy = WindowPolicy(square, max_expansions=1)
        >>> [len(w) for w in policy.windows()]
        [4, 8]
    """

    base: StandardPartition
    max_expansions: int = DEFAULT_MAX_EXPANSIONS
    max_states: int = DEFAULT_MAX_STATES

    def __post_init__(self) -> None:
        if len(self.base) < 3:
            raise DegeneratePolygonError(
                f"Window {self.base} has fewer than 3 intervals"
            )
        if self.max_expansions < 0 or self.max_states < 1:
            raise ValueError("Window budgets must be non-negative")

    @classmethod
    def covering(
        cls,
        *tessellations: FTessellation,
        max_expansions: int = DEFAULT_MAX_EXPANSIONS,
        max_states: int = DEFAULT_MAX_STATES,
    ) -> WindowPolicy:
        """The policy whose base is the joint support polygon of the arguments."""
        base = reduce(refine_common, (b.support for b in tessellations), BASE.support)
        return cls(base, max_expansions=max_expansions, max_states=max_states)

    def windows(self) -> Iterator[StandardPartition]:
        window = self.base
        for _ in range(self.max_expansions + 1):
            yield window
            window = window.subdivide()

    def to_dict(self) -> dict[str, Any]:
        return {
            "window": str(self.base),
            "max_expansions": self.max_expansions,
            "max_states": self.max_states,
        }


def _require_triangulation(a: FTessellation) -> None:
    if not a.is_triangulation:
        raise NotTriangulationError(f"{a} is not an F-triangulation")


def neighbors(
    a: FTessellation, w: WindowPolicy
) -> list[tuple[Arc, FTessellation]]:
    """Every flip of a at an arc strictly inside the window w.base.

    Args:
        a: An F-triangulation
        w: Search window; only arcs strictly inside w.base are flipped

    Returns:
        (flipped arc, resulting F-triangulation) pairs in arc order

    Raises:
        NotTriangulationError: If a is not an F-triangulation
        WindowError: If the support of a is not inside the window
    """
    _require_triangulation(a)
    window = w.base
    polygon = window_polygon(a, window)
    points = window.breakpoints
    found = [
        (
            Arc(points[i - 1], points[j - 1]),
            from_window_polygon(flip(polygon, (i, j)), window),
        )
        for i, j in polygon.sorted_diagonals
    ]
    return sorted(found, key=lambda pair: pair[0])


def _shortest_flip_path(
    start: PolygonTessellation, goal: PolygonTessellation, max_states: int
) -> list[PolygonTessellation]:
    if start == goal:
        return [start]
    parents: dict[PolygonTessellation, PolygonTessellation | None] = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for d in current.sorted_diagonals:
            following = flip(current, d)
            if following in parents:
                continue
            parents[following] = current
            if following == goal:
                path = [following]
                step = parents[following]
                while step is not None:
                    path.append(step)
                    step = parents[step]
                return path[::-1]
            if len(parents) > max_states:
                raise BudgetExceededError(
                    f"Flip search exceeded {max_states} states in P_{start.n}"
                )
            queue.append(following)
    raise AssertionError("flip graph of a polygon is connected")


@dataclass(frozen=True, slots=True)
class DistanceReport:
    """A window-certified upper bound on the flip distance, with its path."""

    source: FTessellation
    target: FTessellation
    bound: int
    window: StandardPartition
    expansions: int
    path: tuple[FTessellation, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": {"source": self.source.to_dict(), "target": self.target.to_dict()},
            "bound": self.bound,
            "window": str(self.window),
            "expansions": self.expansions,
            "path": [vertex.to_dict() for vertex in self.path],
        }


def bfs_distance(a: FTessellation, b: FTessellation, w: WindowPolicy) -> DistanceReport:
    """Shortest flip path from a to b that stays inside a window.

    Every window of the policy is searched and the best bound is kept; the
    bound never increases as the window grows.

    Args:
        a: Source F-triangulation
        b: Target F-triangulation
        w: Windows and state budget of the search

    Returns:
        The best bound, with the window it was found in and its flip path

    Raises:
        NotTriangulationError: If a or b is not an F-triangulation
        WindowError: If a support is not inside the base window
        BudgetExceededError: If the base window search runs out of states
    """
    _require_triangulation(a)
    _require_triangulation(b)
    best: DistanceReport | None = None
    for expansion, window in enumerate(w.windows()):
        try:
            path = _shortest_flip_path(
                window_polygon(a, window), window_polygon(b, window), w.max_states
            )
        except BudgetExceededError:
            if best is None:
                raise
            logger.warning(
                "State budget exhausted at expansion %d; keeping bound", expansion
            )
            break
        logger.debug("Window %s: flip distance %d", window, len(path) - 1)
        if best is None or len(path) - 1 < best.bound:
            best = DistanceReport(
                source=a,
                target=b,
                bound=len(path) - 1,
                window=window,
                expansions=expansion,
                path=tuple(from_window_polygon(p, window) for p in path),
            )
    assert best is not None
    return best


@dataclass(frozen=True, slots=True)
class CellLink:
    """The F-triangulations on the boundary of the cell of center.

    For rank 2 the vertices are listed in cyclic order around the cell.

    Attributes:
        center: The F-tessellation indexing the cell
        shape: The named shape of the link
        vertices: The containing F-triangulations
        edges: Index pairs of vertices related by a single flip
    """

    center: FTessellation
    shape: LinkShape
    vertices: tuple[FTessellation, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict[str, Any]:
        return {
            "center": self.center.to_dict(),
            "shape": self.shape.name,
            "vertex_count": self.vertex_count,
            "vertices": [vertex.to_dict() for vertex in self.vertices],
            "edges": [list(edge) for edge in self.edges],
        }


def _cyclic_order(
    vertices: list[FTessellation], adjacent: dict[int, list[int]]
) -> list[int]:
    order = [0]
    while len(order) < len(vertices):
        step = next((k for k in adjacent[order[-1]] if k not in order), None)
        if step is None:
            break
        order.append(step)
    return order


def _link(center: FTessellation) -> CellLink:
    shape = LinkShape.for_factor_sizes(
        len(region) for region in nontriangular_components(center)
    )
    vertices = containing_triangulations(center)
    adjacent: dict[int, list[int]] = {k: [] for k in range(len(vertices))}
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            if intersect(vertices[i], vertices[j]).rank == 1:
                adjacent[i].append(j)
                adjacent[j].append(i)
    if shape.is_cycle:
        order = _cyclic_order(vertices, adjacent)
        position = {k: p for p, k in enumerate(order)}
        vertices = [vertices[k] for k in order]
        adjacent = {
            position[k]: sorted(position[m] for m in targets)
            for k, targets in adjacent.items()
        }
    edges = tuple(
        (i, j) for i in sorted(adjacent) for j in adjacent[i] if i < j
    )
    return CellLink(center=center, shape=shape, vertices=tuple(vertices), edges=edges)


def minimal_cycle(e1: FTessellation, e2: FTessellation) -> CellLink:
    """The unique minimal closed flip path through two consecutive edges.

    It is the boundary of the 2-cell of e1 & e2: a square (length 4) when that
    cell has two square components, a pentagon (length 5) when it has one
    pentagonal component.

    Args:
        e1: An edge, an F-tessellation of rank 1
        e2: Another edge sharing an F-triangulation with e1

    Returns:
        The link of their 2-cell, vertices in cyclic order

    Raises:
        EdgesNotConsecutiveError: If e1 and e2 are not distinct edges sharing
            an F-triangulation
    """
    if e1.rank != 1 or e2.rank != 1:
        raise EdgesNotConsecutiveError(
            f"Edges must have rank 1, got ranks {e1.rank} and {e2.rank}"
        )
    if e1 == e2:
        raise EdgesNotConsecutiveError(f"Edges coincide: {e1}")
    if find_violations(e1.removed & e2.removed, e1.added | e2.added):
        raise EdgesNotConsecutiveError(f"Edges {e1} and {e2} share no vertex")
    face = intersect(e1, e2)
    if face.rank != 2:
        raise EdgesNotConsecutiveError(f"Edges {e1} and {e2} share no vertex")
    return _link(face)


def classify_link(b: FTessellation) -> CellLink:
    """The shape and vertices of the link of a rank-2 or rank-3 cell.

    Args:
        b: The F-tessellation indexing the cell

    Returns:
        The link with its named shape, vertices and flip edges

    Raises:
        UnsupportedRankError: If the rank of b is not 2 or 3
    """
    if b.rank not in (2, 3):
        raise UnsupportedRankError(
            f"Links are classified for rank 2 and 3, got {b.rank}"
        )
    return _link(b)


def induced_cell_action(t: ThompsonElement, b: FTessellation) -> FTessellation:
    """The cell t . f_b = f_(t . b); dimension and inclusions are preserved.

    Args:
        t: The acting element
        b: The F-tessellation indexing the cell

    Returns:
        The index of the image cell
    """
    return act_tessellation(t, b)


def explore_ball(a: FTessellation, radius: int, w: WindowPolicy) -> list[FTessellation]:
    """F-triangulations within flip distance radius of a inside w.base.

    Ordered by distance, then canonically.

    Args:
        a: Center of the ball
        radius: Largest flip distance
        w: Search window; only w.base is explored

    Returns:
        The F-triangulations of the ball, a first

    Raises:
        BudgetExceededError: If the ball exceeds the state budget
    """
    _require_triangulation(a)
    window = w.base
    start = window_polygon(a, window)
    distance = {start: 0}
    frontier = [start]
    for step in range(1, radius + 1):
        following = []
        for polygon in frontier:
            for d in polygon.sorted_diagonals:
                neighbor = flip(polygon, d)
                if neighbor not in distance:
                    distance[neighbor] = step
                    following.append(neighbor)
        if len(distance) > w.max_states:
            raise BudgetExceededError(
                f"Ball of radius {radius} exceeds {w.max_states} states"
            )
        frontier = following
    vertices = [(d, from_window_polygon(p, window)) for p, d in distance.items()]
    return [vertex for _, vertex in sorted(vertices, key=lambda item: (item[0], item[1]))]


@dataclass(frozen=True, slots=True)
class TranslationReport:
    """Upper bound on the vertex translation length min d(A, t . A)."""

    element: ThompsonElement
    radius: int
    explored: int
    bound: int
    vertex: FTessellation
    image: FTessellation
    distance: DistanceReport

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": self.element.to_dict(),
            "radius": self.radius,
            "explored": self.explored,
            "bound": self.bound,
            "vertex": self.vertex.to_dict(),
            "image": self.image.to_dict(),
            "window": str(self.distance.window),
            "expansions": self.distance.expansions,
        }


def translation_length_upper(
    t: ThompsonElement, radius: int, w: WindowPolicy
) -> TranslationReport:
    """Bound the translation length of t over vertices near A_F.

    For every F-triangulation A in the ball of the given radius around A_F, the
    flip distance from A to t . A is bounded in a window holding both; the
    smallest bound wins. The search stops as soon as a fixed vertex is found.

    Args:
        t: The element acting on C
        radius: Flip radius of the ball of candidate vertices around A_F
        w: Window and budgets for the ball and every distance search

    Returns:
        The smallest bound found, certified by a vertex and its distance report

    Raises:
        BudgetExceededError: If a search runs out of states
    """
    ball = explore_ball(BASE, radius, w)
    best: TranslationReport | None = None
    for vertex in ball:
        image = act_tessellation(t, vertex)
        policy = WindowPolicy(
            refine_common(refine_common(w.base, vertex.support), image.support),
            max_expansions=w.max_expansions,
            max_states=w.max_states,
        )
        report = bfs_distance(vertex, image, policy)
        if best is None or report.bound < best.bound:
            best = TranslationReport(
                element=t,
                radius=radius,
                explored=len(ball),
                bound=report.bound,
                vertex=vertex,
                image=image,
                distance=report,
            )
            if best.bound == 0:
                break
    assert best is not None
    logger.info("Translation length of %s is at most %d", t, best.bound)
    return best


@dataclass(frozen=True, slots=True)
class IsometryReport:
    """Outcome of checking that t preserves minimal-cycle lengths."""

    element: ThompsonElement
    samples: int
    seed: int
    window: StandardPartition
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "query": self.element.to_dict(),
            "samples": self.samples,
            "seed": self.seed,
            "window": str(self.window),
            "passed": self.passed,
            "violations": list(self.violations),
        }


def isometry_consistency_check(
    t: ThompsonElement,
    samples: int = 50,
    *,
    seed: int = 0,
    window: StandardPartition = EIGHT_GON,
) -> IsometryReport:
    """Check that t maps consecutive edges to consecutive edges and preserves
    the length of the minimal closed path through them.

    Pairs of edges are sampled at a random F-triangulation of the window by
    removing two distinct arcs. The seed fully determines the sample.

    Args:
        t: The element to check
        samples: Number of edge pairs to draw
        seed: Seed of the sampling generator
        window: Window the sampled triangulations live in

    Returns:
        A report listing every sample whose image is not consecutive or has
        a cycle of another length
    """
    rng = random.Random(seed)
    violations = []
    for sample in range(samples):
        vertex = random_triangulation(rng, window)
        arcs = sorted(vertex.arcs_within(window) - window.sides())
        first, second = rng.sample(arcs, 2)
        e1, e2 = vertex.without_arc(first), vertex.without_arc(second)
        before = minimal_cycle(e1, e2).vertex_count
        try:
            after = minimal_cycle(
                act_tessellation(t, e1), act_tessellation(t, e2)
            ).vertex_count
        except EdgesNotConsecutiveError as e:
            violations.append(f"sample {sample}: images not consecutive ({e})")
            continue
        if before != after:
            violations.append(
                f"sample {sample}: cycle through {e1} and {e2} has length "
                f"{before}, image has length {after}"
            )
    report = IsometryReport(
        element=t, samples=samples, seed=seed, window=window, violations=tuple(violations)
    )
    logger.info("Isometry check of %s: %d violations", t, len(violations))
    return report
