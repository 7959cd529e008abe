"""Seeded random generators for Stasheff.

Every generator takes a ``random.Random`` so that a seed fully determines a
verification run.
"""

from __future__ import annotations

import random

from stasheff.core.associahedron import flip
from stasheff.core.dyadic import Arc, DyadicInterval, StandardPartition
from stasheff.core.ftess import BASE, FTessellation, from_window_polygon, window_polygon
from stasheff.core.thompson import ThompsonElement, make_element


def random_partition(
    rng: random.Random, intervals: int, *, max_level: int = 6
) -> StandardPartition:
    """A standard dyadic partition with exactly the given number of intervals.

    Intervals at max_level are never split further.

    Raises:
        ValueError: If intervals is not between 1 and 2^max_level
    """
    if not 1 <= intervals <= 1 << max_level:
        raise ValueError(f"Cannot draw {intervals} intervals below level {max_level}")
    pieces = [DyadicInterval(0, 0)]
    while len(pieces) < intervals:
        splittable = [k for k, piece in enumerate(pieces) if piece.level < max_level]
        k = rng.choice(splittable)
        pieces[k : k + 1] = list(pieces[k].children())
    return StandardPartition(pieces)


def random_element(
    rng: random.Random,
    *,
    max_intervals: int = 6,
    max_level: int = 6,
    reversing: bool = True,
) -> ThompsonElement:
    """A reduced element drawn from two random partitions of equal size, a
    random cyclic shift and (if reversing) a random orientation."""
    size = rng.randint(1, max_intervals)
    sources = random_partition(rng, size, max_level=max_level).intervals
    targets = random_partition(rng, size, max_level=max_level).intervals
    shift = rng.randrange(size)
    orientation = rng.choice((1, -1)) if reversing else 1
    pairs = [
        (source, targets[(shift + orientation * k) % size])
        for k, source in enumerate(sources)
    ]
    return make_element(pairs, orientation)


def random_triangulation(
    rng: random.Random, window: StandardPartition, *, flips: int | None = None
) -> FTessellation:
    """A random F-triangulation supported in window: a random flip walk
    from A_F (2k steps for a window of k vertices by default)."""
    polygon = window_polygon(BASE, window)
    if not polygon.diagonals:
        return BASE
    for _ in range(2 * len(window) if flips is None else flips):
        polygon = flip(polygon, rng.choice(polygon.sorted_diagonals))
    return from_window_polygon(polygon, window)


def random_tessellation(
    rng: random.Random, window: StandardPartition, *, max_rank: int = 3
) -> FTessellation:
    """A random F-tessellation supported in window, of rank at most max_rank."""
    vertex = random_triangulation(rng, window)
    polygon = window_polygon(vertex, window)
    rank = rng.randint(0, min(max_rank, len(polygon.diagonals)))
    dropped = rng.sample(polygon.sorted_diagonals, rank)
    points = window.breakpoints
    result = vertex
    for i, j in dropped:
        result = result.without_arc(Arc(points[i - 1], points[j - 1]))
    return result
