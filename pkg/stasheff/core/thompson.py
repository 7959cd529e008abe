"""The non-oriented Thompson group T^no for Stasheff.

An element is a dyadic piecewise-linear homeomorphism of the circle with
power-of-two slopes. It is stored as a list of interval pairs: the sources form
a standard dyadic partition of [0, 1] and each source is mapped affinely onto
its standard dyadic target. For orientation +1 the targets follow each other
counterclockwise, for -1 clockwise.

The group acts on F-tessellations by moving arc endpoints; this module
implements that action and the search for a tessellation an element moves.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Any, Iterable

from stasheff.core.dyadic import (
    Arc,
    Dyadic,
    DyadicInterval,
    StandardPartition,
    base_arcs_in_window,
    base_diagonals_in_window,
    in_base_triangulation,
    normalize,
    refine_common,
)
from stasheff.core.exceptions import (
    BudgetExceededError,
    InvalidElementError,
    NotStandardError,
    ParseError,
)
from stasheff.core.ftess import BASE, FTessellation, flip
from stasheff.core.types import (
    DEFAULT_WITNESS_CANDIDATES,
    DEFAULT_WITNESS_EXPANSIONS,
    Orientation,
)

logger = logging.getLogger(__name__)

IntervalPair = tuple[DyadicInterval, DyadicInterval]


class OrientationSign(IntEnum):
    """Image of an element in Z/2Z: 0 in T, 1 for orientation-reversing maps."""

    PRESERVING = 0
    REVERSING = 1


def _follows(previous: DyadicInterval, current: DyadicInterval, orientation: int) -> bool:
    if orientation == 1:
        return current.left == previous.right
    return current.right == previous.left


@dataclass(frozen=True, slots=True)
class ThompsonElement:
    """An element of T^no given by interval pairs and an orientation.

    Equality and hashing compare the reduced (minimal partition) forms, so two
    presentations of the same map are equal.

    Attributes:
        pairs: (source, target) standard intervals, sorted by source
        orientation: 1 if the map preserves the circle orientation, else -1

    Examples:
        >>> half = [DyadicInterval(0, 1), DyadicInterval(1, 1)]
        >>> t = ThompsonElement([(half[0], half[1]), (half[1], half[0])], 1)
        >>> str(evaluate(t, Dyadic(1, 2)))
        '3/4'
        >>> t == rotation(Dyadic(1, 1))
        True
    """

    pairs: tuple[IntervalPair, ...]
    orientation: Orientation

    def __init__(self, pairs: Iterable[IntervalPair], orientation: int = 1) -> None:
        """Create and validate an element.

        Raises:
            InvalidElementError: If the sources do not partition [0, 1], the
                targets do not partition it, or the targets are not laid out
                cyclically in the direction of the orientation
        """
        if orientation not in (1, -1):
            raise InvalidElementError(f"Orientation must be 1 or -1, got {orientation}")
        ordered = tuple(sorted(pairs, key=lambda pair: pair[0]))
        try:
            StandardPartition(source for source, _ in ordered)
        except NotStandardError as e:
            raise InvalidElementError(f"Sources are not a standard partition: {e}") from e
        try:
            StandardPartition(target for _, target in ordered)
        except NotStandardError as e:
            raise InvalidElementError(f"Targets are not a standard partition: {e}") from e
        for k, (_, target) in enumerate(ordered):
            following = ordered[(k + 1) % len(ordered)][1]
            if not _follows(target, following, orientation):
                direction = "counterclockwise" if orientation == 1 else "clockwise"
                raise InvalidElementError(
                    f"Targets are not cyclically {direction}: {target} then {following}"
                )
        object.__setattr__(self, "pairs", ordered)
        object.__setattr__(self, "orientation", orientation)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ThompsonElement:
        """Build from {"intervals": [{"src": [a, b], "dst": [c, d]}, ...],
        "orientation": 1 | -1}.

        Raises:
            ParseError: If the document is malformed
            InvalidElementError: If the intervals do not define an element
        """
        try:
            orientation = int(data.get("orientation", 1))
            raw = [(entry["src"], entry["dst"]) for entry in data["intervals"]]
        except (AttributeError, KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed element document: {e}") from e
        pairs = []
        for src, dst in raw:
            try:
                pairs.append(
                    (DyadicInterval.parse(*src), DyadicInterval.parse(*dst))
                )
            except NotStandardError as e:
                raise InvalidElementError(str(e)) from e
            except TypeError as e:
                raise ParseError(f"Malformed interval pair: {src!r}, {dst!r}") from e
        return cls(pairs, orientation)

    def to_dict(self) -> dict[str, Any]:
        return {
            "intervals": [
                {"src": list(src.bounds_text), "dst": list(dst.bounds_text)}
                for src, dst in self.pairs
            ],
            "orientation": self.orientation,
        }

    @property
    def domain_partition(self) -> StandardPartition:
        return StandardPartition(source for source, _ in self.pairs)

    @property
    def image_partition(self) -> StandardPartition:
        return StandardPartition(target for _, target in self.pairs)

    @property
    def image_points(self) -> tuple[Dyadic, ...]:
        """Images of the domain breakpoints, in domain order."""
        return tuple(evaluate(self, source.left) for source, _ in self.pairs)

    @property
    def wrap_index(self) -> int:
        """Index of the pair whose target touches 0 from the orientation side."""
        for k, (_, target) in enumerate(self.pairs):
            if self.orientation == 1 and target.index == 0:
                return k
            if self.orientation == -1 and target.index + 1 == 1 << target.level:
                return k
        raise AssertionError("targets do not cover 0")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThompsonElement):
            return NotImplemented
        return _reduced(self.pairs, self.orientation) == _reduced(
            other.pairs, other.orientation
        )

    def __hash__(self) -> int:
        return hash(_reduced(self.pairs, self.orientation))

    def __str__(self) -> str:
        body = "; ".join(f"{src}->{dst}" for src, dst in self.pairs)
        return f"{body} ({'+' if self.orientation == 1 else '-'})"

    def __repr__(self) -> str:
        return f"ThompsonElement.from_dict({json.dumps(self.to_dict())})"


def _mergeable(left: IntervalPair, right: IntervalPair, orientation: int) -> bool:
    if not left[0].is_left_sibling_of(right[0]):
        return False
    if orientation == 1:
        return left[1].is_left_sibling_of(right[1])
    return right[1].is_left_sibling_of(left[1])


@lru_cache(maxsize=4096)
def _reduced(
    pairs: tuple[IntervalPair, ...], orientation: int
) -> tuple[tuple[IntervalPair, ...], int]:
    stack: list[IntervalPair] = []
    for pair in pairs:
        stack.append(pair)
        while len(stack) >= 2 and _mergeable(stack[-2], stack[-1], orientation):
            right = stack.pop()
            left = stack.pop()
            source = left[0].parent()
            target = (left if orientation == 1 else right)[1].parent()
            assert source is not None and target is not None
            stack.append((source, target))
    return tuple(stack), orientation


def reduce_minimal(t: ThompsonElement) -> ThompsonElement:
    """Present t on its minimal standard dyadic partition.

    Sibling source intervals are merged whenever their targets are siblings in
    the order the orientation demands. Idempotent.

    Args:
        t: Any presentation of the element

    Returns:
        The same map on the coarsest partition where it is affine

    Examples:
        >>> len(reduce_minimal(reflection()).pairs)
        1
    """
    pairs, orientation = _reduced(t.pairs, t.orientation)
    return ThompsonElement(pairs, orientation)


def make_element(pairs: Iterable[IntervalPair], orientation: int = 1) -> ThompsonElement:
    """Validate interval pairs and return the reduced element.

    Args:
        pairs: (source, target) standard intervals
        orientation: 1 to preserve the circle orientation, -1 to reverse it

    Raises:
        InvalidElementError: If the pairs do not define an element of T^no
    """
    return reduce_minimal(ThompsonElement(pairs, orientation))


def _source_pair(t: ThompsonElement, x: Dyadic) -> IntervalPair:
    for pair in t.pairs:
        if pair[0].contains_point(x):
            return pair
    raise AssertionError(f"{x} not covered by {t}")


def evaluate(t: ThompsonElement, x: Dyadic) -> Dyadic:
    """The exact image t(x).

    Args:
        t: The element to apply
        x: A point of the circle; 0 and 1 are the same point

    Returns:
        The image in canonical form, reduced modulo 1

    Examples:
        >>> str(evaluate(slope_map(), Dyadic(1, 2)))
        '1/8'
        >>> str(evaluate(reflection(), Dyadic(1, 2)))
        '3/4'
    """
    source, target = _source_pair(t, x)
    outer = max(x.exponent, source.level)
    offset = x.at_exponent(outer) - (source.index << (outer - source.level))
    inner = outer - source.level + target.level
    scale = 1 << (inner - target.level)
    if t.orientation == 1:
        return normalize(target.index * scale + offset, inner)
    return normalize((target.index + 1) * scale - offset, inner)


def _image_interval(
    pair: IntervalPair, orientation: int, piece: DyadicInterval
) -> DyadicInterval:
    """Image of the standard subinterval piece of pair's source."""
    source, target = pair
    depth = piece.level - source.level
    rest = piece.index - (source.index << depth)
    if orientation == -1:
        rest = (1 << depth) - 1 - rest
    return DyadicInterval((target.index << depth) + rest, target.level + depth)


def _split_pair(pair: IntervalPair, orientation: int) -> tuple[IntervalPair, IntervalPair]:
    (s0, s1), (d0, d1) = pair[0].children(), pair[1].children()
    if orientation == 1:
        return (s0, d0), (s1, d1)
    return (s0, d1), (s1, d0)


def compose(s: ThompsonElement, t: ThompsonElement) -> ThompsonElement:
    """The reduced element x -> s(t(x)).

    t's pairs are split at midpoints until every target lies inside a single
    source of s, then each target is pushed through s.

    Args:
        s: The element applied second
        t: The element applied first

    Returns:
        The composite, on its minimal partition

    Examples:
        >>> compose(reflection(), reflection()) == identity()
        True
    """
    pending = list(t.pairs)
    refined: list[IntervalPair] = []
    while pending:
        pair = pending.pop()
        target = pair[1]
        outer = next((p for p in s.pairs if p[0].contains(target)), None)
        if outer is None:
            pending.extend(_split_pair(pair, t.orientation))
            continue
        refined.append((pair[0], _image_interval(outer, s.orientation, target)))
    return make_element(refined, s.orientation * t.orientation)


def inverse(t: ThompsonElement) -> ThompsonElement:
    """The reduced inverse: sources and targets swap roles."""
    return make_element(((target, source) for source, target in t.pairs), t.orientation)


def sign(t: ThompsonElement) -> OrientationSign:
    """The orientation homomorphism T^no -> Z/2Z.

    Returns:
        PRESERVING (0) for elements of T, REVERSING (1) otherwise
    """
    if t.orientation == 1:
        return OrientationSign.PRESERVING
    return OrientationSign.REVERSING


def power(t: ThompsonElement, k: int) -> ThompsonElement:
    """t composed with itself k times.

    Args:
        t: The element
        k: Exponent; negative values use the inverse of t

    Returns:
        The reduced power, the identity for k = 0
    """
    base = t if k >= 0 else inverse(t)
    result = identity()
    for _ in range(abs(k)):
        result = compose(base, result)
    return result


def identity() -> ThompsonElement:
    return ThompsonElement([(DyadicInterval(0, 0), DyadicInterval(0, 0))], 1)


def reflection() -> ThompsonElement:
    """The orientation-reversing involution x -> -x mod 1."""
    return ThompsonElement([(DyadicInterval(0, 0), DyadicInterval(0, 0))], -1)


def rotation(d: Dyadic) -> ThompsonElement:
    """Rotation of the circle by d.

    Examples:
        >>> len(rotation(Dyadic(1, 2)).pairs)
        4
    """
    level = d.exponent
    size = 1 << level
    return make_element(
        (
            (DyadicInterval(i, level), DyadicInterval((i + d.numerator) % size, level))
            for i in range(size)
        ),
        1,
    )


def slope_map() -> ThompsonElement:
    """The map with slopes 1/2, 1, 2 sending 0, 1/2, 3/4 to 0, 1/4, 1/2."""
    return ThompsonElement(
        [
            (DyadicInterval(0, 1), DyadicInterval(0, 2)),
            (DyadicInterval(2, 2), DyadicInterval(1, 2)),
            (DyadicInterval(3, 2), DyadicInterval(1, 1)),
        ],
        1,
    )


def parse_element(text: str) -> ThompsonElement:
    """Parse an element from JSON or from generator shorthands.

    Shorthands are "id", "refl", "slope" and "rot m/2^n"; a product such as
    "rot 1/4 * refl" means the composite (apply the right factor first).

    Args:
        text: A JSON document with "intervals" and "orientation", or shorthands
            joined by "*"

    Returns:
        The reduced element

    Raises:
        ParseError: If the text is neither valid JSON nor a shorthand
        InvalidElementError: If a JSON document does not define an element

    Examples:
        >>> parse_element("refl * refl") == identity()
        True
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(
                f"Invalid element JSON at line {e.lineno} column {e.colno}: {e.msg}"
            ) from e
        return reduce_minimal(ThompsonElement.from_dict(data))
    factors = [_parse_generator(part) for part in stripped.split("*")]
    result = factors[-1]
    for factor in reversed(factors[:-1]):
        result = compose(factor, result)
    return reduce_minimal(result)


def _parse_generator(text: str) -> ThompsonElement:
    words = text.split()
    if words in (["id"], ["identity"]):
        return identity()
    if words in (["refl"], ["reflection"]):
        return reflection()
    if words == ["slope"]:
        return slope_map()
    if len(words) == 2 and words[0] in ("rot", "rotation"):
        return rotation(Dyadic.parse(words[1]))
    raise ParseError(f"Unknown element shorthand: {text.strip()!r}")


def act_arc(t: ThompsonElement, a: Arc) -> Arc:
    """The arc joining the images of a's endpoints.

    Args:
        t: The acting element
        a: A dyadic arc

    Returns:
        The image arc
    """
    return Arc(evaluate(t, a.start), evaluate(t, a.end))


def act_tessellation(t: ThompsonElement, b: FTessellation) -> FTessellation:
    """The F-tessellation t . b.

    Inside the window refining both the support polygon of b and the domain
    partition of t, every arc is mapped endpoint by endpoint; outside it, t
    carries A_F onto A_F. Rank is preserved.

    Args:
        t: The acting element
        b: Any F-tessellation

    Returns:
        The image tessellation, of the same rank as b

    Examples:
        >>> act_tessellation(rotation(Dyadic(1, 1)), BASE) == BASE
        True
        >>> str(act_tessellation(rotation(Dyadic(1, 2)), BASE))
        'A_F - {[0,1/2]} + {[1/4,3/4]}'
    """
    window = refine_common(b.support, t.domain_partition)
    image_window = StandardPartition(
        _image_interval(_source_pair(t, piece.left), t.orientation, piece)
        for piece in window
    )
    image = {act_arc(t, a) for a in b.arcs_within(window)}
    removed = base_arcs_in_window(image_window) - image
    added = {a for a in image if not in_base_triangulation(a)}
    return FTessellation._trusted(removed, added)


def faithfulness_witness(
    t: ThompsonElement,
    *,
    max_expansions: int = DEFAULT_WITNESS_EXPANSIONS,
    max_candidates: int = DEFAULT_WITNESS_CANDIDATES,
) -> FTessellation | None:
    """Find an F-triangulation that t moves, or None when t is the identity.

    A_F is tried first, then the flips of A_F at the diagonals of ever finer
    windows.

    Args:
        t: The element to test
        max_expansions: How many times the search window may be subdivided
        max_candidates: How many flipped triangulations may be tried

    Returns:
        An F-triangulation A with t . A != A, or None for the identity

    Raises:
        BudgetExceededError: If no witness is found within the budget
    """
    if t == identity():
        return None
    if act_tessellation(t, BASE) != BASE:
        return BASE
    window = BASE.support
    tried: set[Arc] = set()
    for expansion in range(max_expansions + 1):
        fresh = sorted(base_diagonals_in_window(window) - tried)
        logger.debug("Witness search window %s: %d new arcs", window, len(fresh))
        for arc in fresh:
            tried.add(arc)
            if len(tried) > max_candidates:
                raise BudgetExceededError(
                    f"No witness among {max_candidates} candidate triangulations"
                )
            vertex = flip(BASE, arc)
            if act_tessellation(t, vertex) != vertex:
                logger.debug("Witness found after %d expansions: %s", expansion, vertex)
                return vertex
        window = window.subdivide()
    raise BudgetExceededError(f"No witness within {max_expansions} window expansions")
