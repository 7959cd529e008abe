"""Dyadic arithmetic on the unit circle for Stasheff.

This module provides exact dyadic rationals on the circle [0, 1) (with 0 and 1
identified), dyadic arcs (chords of the disk), standard dyadic intervals and
standard dyadic partitions, together with the crossing test and the membership
test for the base triangulation A_F.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from stasheff.core.exceptions import (
    DegenerateIntervalError,
    DegeneratePolygonError,
    NotStandardError,
    ParseError,
)

_DYADIC_PATTERN = re.compile(r"^\s*(\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")
_ARC_PATTERN = re.compile(r"^\s*\[\s*([^,\]]+?)\s*,\s*([^,\]]+?)\s*\]\s*$")


def _reduce(numerator: int, exponent: int) -> tuple[int, int]:
    """Cancel common factors of two from numerator / 2^exponent."""
    if numerator == 0:
        return 0, 0
    shift = min(exponent, (numerator & -numerator).bit_length() - 1)
    return numerator >> shift, exponent - shift


def _parse_fraction(text: str) -> tuple[int, int]:
    """Parse "m/2^n", "m/d" or "m" into a reduced (numerator, exponent) pair.

    The value is not reduced modulo 1, so "1" survives as an interval endpoint.
    """
    match = _DYADIC_PATTERN.match(text)
    if not match:
        raise ParseError(f"Invalid dyadic rational: {text!r}")
    numerator = int(match.group(1))
    if match.group(2) is not None:
        exponent = int(match.group(2))
    elif match.group(3) is not None:
        denominator = int(match.group(3))
        if denominator <= 0 or denominator & (denominator - 1):
            raise ParseError(f"Denominator is not a power of two: {text!r}")
        exponent = denominator.bit_length() - 1
    else:
        exponent = 0
    numerator, exponent = _reduce(numerator, exponent)
    if numerator > 1 << exponent:
        raise ParseError(f"Dyadic rational outside [0, 1]: {text!r}")
    return numerator, exponent


def _format_fraction(numerator: int, exponent: int) -> str:
    if numerator == 0:
        return "0"
    if exponent == 0:
        return str(numerator)
    return f"{numerator}/{1 << exponent}"


@dataclass(frozen=True, slots=True)
class Dyadic:
    """A dyadic rational m/2^n on the circle [0, 1).

    The value is always kept in canonical form: zero is ``Dyadic(0, 0)`` and any
    other value has an odd numerator strictly between 0 and 2^exponent. Because
    the form is canonical, structural equality is value equality.

    Attributes:
        numerator: Odd numerator (or 0)
        exponent: Power of two in the denominator

    Examples:
        >>> Dyadic(2, 2)
        Dyadic(1, 1)
        >>> str(Dyadic(4, 2))
        '0'
        >>> str(Dyadic.parse("3/2^3"))
        '3/8'
    """

    numerator: int
    exponent: int

    def __init__(self, numerator: int = 0, exponent: int = 0) -> None:
        """Create a dyadic rational, reducing it modulo 1 to canonical form.

        Raises:
            ValueError: If exponent is negative
        """
        if exponent < 0:
            raise ValueError(f"Exponent must be non-negative, got {exponent}")
        numerator, exponent = _reduce(numerator % (1 << exponent), exponent)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        """Parse the textual form "m/2^n" (also "m/8", "0" and "1").

        Raises:
            ParseError: If the text is not a dyadic rational in [0, 1]
        """
        return cls(*_parse_fraction(text))

    def at_exponent(self, exponent: int) -> int:
        """Return the numerator of this value written over 2^exponent."""
        if exponent < self.exponent:
            raise ValueError(
                f"Cannot write {self} over 2^{exponent}: exponent too small"
            )
        return self.numerator << (exponent - self.exponent)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.numerator << other.exponent < other.numerator << self.exponent

    def __le__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.numerator << other.exponent <= other.numerator << self.exponent

    def __gt__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.numerator << other.exponent > other.numerator << self.exponent

    def __ge__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.numerator << other.exponent >= other.numerator << self.exponent

    def __str__(self) -> str:
        return _format_fraction(self.numerator, self.exponent)

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.exponent})"


ZERO = Dyadic()
HALF = Dyadic(1, 1)


def normalize(numerator: int, exponent: int) -> Dyadic:
    """Return the canonical Dyadic equal to numerator / 2^exponent modulo 1.

    Examples:
        >>> normalize(2, 2)
        Dyadic(1, 1)
        >>> normalize(4, 2)
        Dyadic(0, 0)
    """
    return Dyadic(numerator, exponent)


def cyclically_between(x: Dyadic, a: Dyadic, b: Dyadic) -> bool:
    """Check whether x lies strictly inside the counterclockwise arc from a to b.

    Raises:
        DegenerateIntervalError: If a equals b
    """
    if a == b:
        raise DegenerateIntervalError(f"Degenerate circle interval from {a} to {b}")
    exponent = max(x.exponent, a.exponent, b.exponent)
    full = 1 << exponent
    origin = a.at_exponent(exponent)
    offset_x = (x.at_exponent(exponent) - origin) % full
    offset_b = (b.at_exponent(exponent) - origin) % full
    return 0 < offset_x < offset_b


@dataclass(frozen=True, slots=True)
class Arc:
    """A dyadic arc: the chord of the disk joining two distinct dyadic points.

    Endpoints are stored smaller value first so that equality is structural.

    Examples:
        >>> str(Arc(Dyadic(1, 1), Dyadic(0, 0)))
        '[0,1/2]'
        >>> Arc.parse("[3/4,1/4]") == Arc.parse("[1/4,3/4]")
        True
    """

    start: Dyadic
    end: Dyadic

    def __init__(self, a: Dyadic | str, b: Dyadic | str) -> None:
        """Create an arc from two endpoints (Dyadic or textual form).

        Raises:
            DegenerateIntervalError: If both endpoints are the same circle point
        """
        first = Dyadic.parse(a) if isinstance(a, str) else a
        second = Dyadic.parse(b) if isinstance(b, str) else b
        if first == second:
            raise DegenerateIntervalError(f"Arc endpoints coincide: {first}")
        if second < first:
            first, second = second, first
        object.__setattr__(self, "start", first)
        object.__setattr__(self, "end", second)

    @classmethod
    def parse(cls, text: str) -> Arc:
        """Parse the textual form "[a,b]".

        Raises:
            ParseError: If the text is not a pair of dyadic rationals
        """
        match = _ARC_PATTERN.match(text)
        if not match:
            raise ParseError(f"Invalid arc: {text!r}")
        try:
            return cls(match.group(1), match.group(2))
        except DegenerateIntervalError as e:
            raise ParseError(f"Invalid arc: {text!r}") from e

    @property
    def endpoints(self) -> tuple[Dyadic, Dyadic]:
        return (self.start, self.end)

    def shares_endpoint(self, other: Arc) -> bool:
        """Check whether the two arcs have an endpoint in common."""
        return bool({self.start, self.end} & {other.start, other.end})

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Arc):
            return NotImplemented
        return (self.start, self.end) < (other.start, other.end)

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"

    def __repr__(self) -> str:
        return f"Arc.parse('{self}')"


HALF_ARC = Arc(ZERO, HALF)


def arcs_cross(a1: Arc, a2: Arc) -> bool:
    """Check whether two arcs cross in the open disk.

    Arcs sharing an endpoint never cross.

    Examples:
        >>> arcs_cross(Arc.parse("[0,1/2]"), Arc.parse("[1/4,3/4]"))
        True
        >>> arcs_cross(Arc.parse("[0,1/2]"), Arc.parse("[0,1/4]"))
        False
    """
    if a1.shares_endpoint(a2):
        return False
    return cyclically_between(a2.start, a1.start, a1.end) != cyclically_between(
        a2.end, a1.start, a1.end
    )


@dataclass(frozen=True, slots=True)
class DyadicInterval:
    """A standard dyadic interval [m/2^n, (m+1)/2^n] of the unit interval.

    Attributes:
        index: The numerator m (0 <= m < 2^n)
        level: The exponent n

    Examples:
        >>> str(DyadicInterval(3, 2))
        '[3/4,1]'
        >>> [str(child) for child in DyadicInterval(0, 1).children()]
        ['[0,1/4]', '[1/4,1/2]']
    """

    index: int
    level: int

    def __init__(self, index: int, level: int) -> None:
        """Create the standard interval [index/2^level, (index+1)/2^level].

        Raises:
            NotStandardError: If index is outside 0..2^level - 1
        """
        if level < 0 or not 0 <= index < 1 << level:
            raise NotStandardError(
                f"Not a standard dyadic interval: index {index} at level {level}"
            )
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "level", level)

    @classmethod
    def from_bounds(
        cls, low: tuple[int, int], high: tuple[int, int]
    ) -> DyadicInterval:
        """Build the interval between two (numerator, exponent) bounds.

        The upper bound may be 1, written (1, 0).

        Raises:
            NotStandardError: If [low, high] is not a standard dyadic interval
        """
        exponent = max(low[1], high[1])
        lo = low[0] << (exponent - low[1])
        hi = high[0] << (exponent - high[1])
        width = hi - lo
        if width <= 0 or width & (width - 1) or lo % width or hi > 1 << exponent:
            raise NotStandardError(
                f"Not a standard dyadic interval: "
                f"[{_format_fraction(*low)},{_format_fraction(*high)}]"
            )
        shift = width.bit_length() - 1
        return cls(lo >> shift, exponent - shift)

    @classmethod
    def parse(cls, low: str, high: str) -> DyadicInterval:
        """Parse an interval from its two textual endpoints ("1" allowed on top).

        Raises:
            ParseError: If an endpoint is malformed
            NotStandardError: If the interval is not standard dyadic
        """
        return cls.from_bounds(_parse_fraction(low), _parse_fraction(high))

    @property
    def left(self) -> Dyadic:
        return Dyadic(self.index, self.level)

    @property
    def right(self) -> Dyadic:
        """Right endpoint on the circle (the interval ending at 1 gives 0)."""
        return Dyadic(self.index + 1, self.level)

    @property
    def bounds_text(self) -> tuple[str, str]:
        """Textual endpoints with the top of the unit interval written as "1"."""
        return (
            _format_fraction(*_reduce(self.index, self.level)),
            _format_fraction(*_reduce(self.index + 1, self.level)),
        )

    def children(self) -> tuple[DyadicInterval, DyadicInterval]:
        """Split at the midpoint into two standard intervals."""
        return (
            DyadicInterval(2 * self.index, self.level + 1),
            DyadicInterval(2 * self.index + 1, self.level + 1),
        )

    def parent(self) -> DyadicInterval | None:
        if self.level == 0:
            return None
        return DyadicInterval(self.index >> 1, self.level - 1)

    def is_left_sibling_of(self, other: DyadicInterval) -> bool:
        """Check whether self and other are the two halves of a standard interval."""
        return (
            self.level == other.level
            and self.index % 2 == 0
            and other.index == self.index + 1
        )

    def contains(self, other: DyadicInterval) -> bool:
        """Check whether other is a (not necessarily proper) subinterval."""
        return (
            other.level >= self.level
            and other.index >> (other.level - self.level) == self.index
        )

    def _position(self, x: Dyadic) -> tuple[int, int, int]:
        exponent = max(self.level, x.exponent)
        shift = exponent - self.level
        return (
            self.index << shift,
            x.at_exponent(exponent),
            (self.index + 1) << shift,
        )

    def contains_point(self, x: Dyadic) -> bool:
        """Check whether x lies in the half-open interval [left, right)."""
        low, point, high = self._position(x)
        return low <= point < high

    def strictly_contains_point(self, x: Dyadic) -> bool:
        low, point, high = self._position(x)
        return low < point < high

    def chord(self) -> Arc | None:
        """The dyadic arc joining the endpoints (None for the whole circle)."""
        if self.level == 0:
            return None
        return Arc(self.left, self.right)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, DyadicInterval):
            return NotImplemented
        exponent = max(self.level, other.level)
        return (self.index << (exponent - self.level), self.level) < (
            other.index << (exponent - other.level),
            other.level,
        )

    def __str__(self) -> str:
        low, high = self.bounds_text
        return f"[{low},{high}]"

    def __repr__(self) -> str:
        return f"DyadicInterval({self.index}, {self.level})"


def _try_interval(low: tuple[int, int], high: tuple[int, int]) -> DyadicInterval | None:
    try:
        return DyadicInterval.from_bounds(low, high)
    except NotStandardError:
        return None


@dataclass(frozen=True, slots=True)
class StandardPartition:
    """A standard dyadic partition 0 = x_0 < x_1 < ... < x_k = 1.

    Stored as its ordered standard intervals; the breakpoints x_0..x_{k-1} are
    circle points and, for k >= 3, the vertices of an inscribed polygon of A_F.

    Examples:
        >>> p = StandardPartition.parse("0,1/4,1/2,3/4")
        >>> len(p)
        4
        >>> str(p.subdivide())
        '0,1/8,1/4,3/8,1/2,5/8,3/4,7/8'
    """

    intervals: tuple[DyadicInterval, ...]

    def __init__(self, intervals: Iterable[DyadicInterval]) -> None:
        """Create a partition from its intervals (any order).

        Raises:
            NotStandardError: If the intervals do not tile [0, 1] exactly
        """
        ordered = tuple(sorted(intervals))
        if not ordered:
            raise NotStandardError("A partition needs at least one interval")
        cursor = (0, 0)
        for interval in ordered:
            if _reduce(interval.index, interval.level) != cursor:
                raise NotStandardError(
                    f"Intervals do not tile [0,1]: gap or overlap at {interval}"
                )
            cursor = _reduce(interval.index + 1, interval.level)
        if cursor != (1, 0):
            raise NotStandardError("Intervals do not reach 1")
        object.__setattr__(self, "intervals", ordered)

    @classmethod
    def from_breakpoints(cls, points: Iterable[Dyadic]) -> StandardPartition:
        """Build the partition with the given breakpoints (0 is always added).

        Raises:
            NotStandardError: If some consecutive interval is not standard
        """
        ordered = sorted(set(points) | {ZERO})
        bounds = [(p.numerator, p.exponent) for p in ordered] + [(1, 0)]
        return cls(
            DyadicInterval.from_bounds(low, high)
            for low, high in zip(bounds, bounds[1:])
        )

    @classmethod
    def coarsest_containing(cls, points: Iterable[Dyadic]) -> StandardPartition:
        """The coarsest standard partition having every point as a breakpoint.

        Examples:
            >>> str(StandardPartition.coarsest_containing([Dyadic(3, 3)]))
            '0,1/4,3/8,1/2'
        """
        targets = set(points)

        def split(interval: DyadicInterval) -> Iterator[DyadicInterval]:
            if any(interval.strictly_contains_point(p) for p in targets):
                for child in interval.children():
                    yield from split(child)
            else:
                yield interval

        return cls(split(DyadicInterval(0, 0)))

    @classmethod
    def parse(cls, text: str) -> StandardPartition:
        """Parse a comma-separated breakpoint list such as "0,1/4,1/2,3/4".

        Raises:
            ParseError: If the text is malformed or not a standard partition
        """
        try:
            points = [Dyadic.parse(part) for part in text.split(",") if part.strip()]
            return cls.from_breakpoints(points)
        except NotStandardError as e:
            raise ParseError(f"Invalid partition: {text!r}") from e

    @property
    def breakpoints(self) -> tuple[Dyadic, ...]:
        return tuple(interval.left for interval in self.intervals)

    def sides(self) -> frozenset[Arc]:
        """The chords of the intervals: the sides of the inscribed polygon."""
        return frozenset(
            chord for chord in (i.chord() for i in self.intervals) if chord is not None
        )

    def is_refinement_of(self, other: StandardPartition) -> bool:
        """Check whether every breakpoint of other is a breakpoint of self."""
        return set(other.breakpoints) <= set(self.breakpoints)

    def subdivide(self) -> StandardPartition:
        """Split every interval at its midpoint (one more layer of A_F)."""
        return StandardPartition(
            child for interval in self.intervals for child in interval.children()
        )

    def interval_containing(self, x: Dyadic) -> DyadicInterval:
        for interval in self.intervals:
            if interval.contains_point(x):
                return interval
        raise AssertionError(f"{x} not covered by partition {self}")

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self) -> Iterator[DyadicInterval]:
        return iter(self.intervals)

    def __str__(self) -> str:
        return ",".join(str(point) for point in self.breakpoints)

    def __repr__(self) -> str:
        return f"StandardPartition.parse('{self}')"


TRIVIAL_PARTITION = StandardPartition([DyadicInterval(0, 0)])


def arc_interval(a: Arc) -> DyadicInterval | None:
    """The standard interval of length <= 1/2 whose chord is a, if a is in A_F.

    The diameter (0,1/2) is reported as [0,1/2].
    """
    if a == HALF_ARC:
        return DyadicInterval(0, 1)
    low = (a.start.numerator, a.start.exponent)
    high = (a.end.numerator, a.end.exponent)
    interval = _try_interval(low, high)
    if interval is not None and interval.level >= 2:
        return interval
    if a.start == ZERO:
        interval = _try_interval(high, (1, 0))
        if interval is not None and interval.level >= 2:
            return interval
    return None


def in_base_triangulation(a: Arc) -> bool:
    """Check whether a belongs to the base triangulation A_F.

    A_F consists of (0,1/2) and every chord (m/2^n, (m+1)/2^n) with n >= 2.

    Examples:
        >>> in_base_triangulation(Arc.parse("[1/4,1/2]"))
        True
        >>> in_base_triangulation(Arc.parse("[3/4,0]"))
        True
        >>> in_base_triangulation(Arc.parse("[1/4,3/4]"))
        False
    """
    return arc_interval(a) is not None


def _require_polygon(p: StandardPartition) -> None:
    if len(p) < 3:
        raise DegeneratePolygonError(
            f"Partition {p} has {len(p)} intervals; an inscribed polygon needs 3"
        )


@lru_cache(maxsize=1024)
def base_arcs_in_window(p: StandardPartition) -> frozenset[Arc]:
    """The arcs of A_F inside or on the polygon inscribed on the breakpoints of p.

    For a partition with k intervals this is the k sides plus the k - 3
    diagonals of the restriction of A_F to the polygon.

    Raises:
        DegeneratePolygonError: If p has fewer than 3 intervals
    """
    _require_polygon(p)
    breakpoints = set(p.breakpoints)
    pieces = set(p.intervals)
    found: set[Arc] = set()
    stack = [DyadicInterval(0, 1), DyadicInterval(1, 1)]
    while stack:
        interval = stack.pop()
        if interval.left in breakpoints and interval.right in breakpoints:
            chord = interval.chord()
            assert chord is not None
            found.add(chord)
            if interval not in pieces:
                stack.extend(interval.children())
    return frozenset(found)


def base_diagonals_in_window(p: StandardPartition) -> frozenset[Arc]:
    """The A_F arcs strictly inside the inscribed polygon of p."""
    return base_arcs_in_window(p) - p.sides()


def refine_common(p: StandardPartition, q: StandardPartition) -> StandardPartition:
    """The coarsest standard partition refining both p and q.

    Examples:
        >>> half = StandardPartition.parse("0,1/2")
        >>> str(refine_common(half, StandardPartition.parse("0,1/4,1/2")))
        '0,1/4,1/2'
    """
    return StandardPartition.coarsest_containing(set(p.breakpoints) | set(q.breakpoints))


def polygon_sides(p: StandardPartition) -> frozenset[Arc]:
    """The sides of the polygon inscribed on the breakpoints of p.

    Raises:
        DegeneratePolygonError: If p has fewer than 3 intervals
    """
    _require_polygon(p)
    return p.sides()
