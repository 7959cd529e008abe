import pytest

from stasheff.core.associahedron import PolygonTessellation
from stasheff.core.dyadic import HALF_ARC, Arc, Dyadic, StandardPartition, base_arcs_in_window
from stasheff.core.exceptions import (
    BudgetExceededError,
    InvalidPolygonError,
    InvalidTessellationError,
    NotTriangulationError,
    ParseError,
    WindowError,
)
from stasheff.core.ftess import (
    BASE,
    FTessellation,
    Violation,
    cell_of,
    containing_triangulations,
    find_violations,
    flip,
    flip_arc,
    from_window_polygon,
    intersect,
    leq,
    nontriangular_components,
    rank,
    support_polygon,
    validate,
    window_polygon,
)
from stasheff.core.sampling import random_tessellation


def arc(text: str) -> Arc:
    return Arc.parse(text)


def points(text: str) -> tuple[Dyadic, ...]:
    return tuple(Dyadic.parse(part) for part in text.split(","))


EDGE = FTessellation(removed=[HALF_ARC])
FLIPPED = FTessellation(removed=[HALF_ARC], added=[arc("[1/4,3/4]")])
PENTAGON = FTessellation(removed=[HALF_ARC, arc("[1/4,1/2]")])
TWO_SQUARES = FTessellation(removed=[arc("[0,1/4]"), arc("[1/2,3/4]")])


class TestBase:
    def test_base_triangulation(self):
        """Test A_F itself."""
        assert BASE.rank == 0
        assert BASE.is_triangulation
        assert str(BASE) == "A_F"
        assert BASE.to_dict() == {"removed": [], "added": []}
        assert nontriangular_components(BASE) == []

    def test_validate_empty_delta(self):
        """Test that the empty delta is A_F."""
        assert validate([], []) == BASE

    def test_contains_arc(self):
        """Test arc membership."""
        assert BASE.contains_arc(HALF_ARC)
        assert not EDGE.contains_arc(HALF_ARC)
        assert FLIPPED.contains_arc(arc("[1/4,3/4]"))
        assert not BASE.contains_arc(arc("[1/4,3/4]"))


class TestValidation:
    def test_crossing_added_arc(self):
        """Test that an added arc crossing A_F is rejected."""
        with pytest.raises(InvalidTessellationError) as info:
            FTessellation(added=[arc("[1/4,3/4]")])
        assert [v.kind for v in info.value.violations] == ["crossing"]
        assert str(info.value).startswith("Invalid F-tessellation: ")

    def test_removed_must_be_base(self):
        """Test that only A_F arcs can be removed."""
        violations = find_violations([arc("[1/4,3/4]")], [])
        assert [v.kind for v in violations] == ["removed-not-base"]

    def test_added_must_not_be_base(self):
        """Test that A_F arcs cannot be added."""
        violations = find_violations([], [arc("[0,1/4]")])
        assert [v.kind for v in violations] == ["added-in-base"]

    def test_redundant_arcs(self):
        """Test that listing an arc twice is reported."""
        violations = find_violations([HALF_ARC, HALF_ARC], [])
        assert violations[0] == Violation("redundant", (HALF_ARC,))

    def test_duplicate_added_arc(self):
        """Test that an added arc listed twice is the only violation reported."""
        violations = find_violations([HALF_ARC], [arc("[1/4,3/4]"), arc("[1/4,3/4]")])
        assert violations == [Violation("redundant", (arc("[1/4,3/4]"),))]

    def test_valid_deltas_are_minimal(self, rng, eight_gon):
        """Test that dropping any arc of a valid tessellation changes it."""
        for _ in range(40):
            b = random_tessellation(rng, eight_gon)
            assert find_violations(b.removed, b.added) == []
            assert all(len(region) >= 4 for region in nontriangular_components(b))
            for a in sorted(b.arcs_within(eight_gon) - eight_gon.sides()):
                coarser = b.without_arc(a)
                assert coarser != b
                assert coarser.rank == b.rank + 1
                assert validate(coarser.removed, coarser.added) == coarser

    def test_two_added_arcs_crossing(self):
        """Test that added arcs may not cross each other."""
        violations = find_violations(
            [HALF_ARC, arc("[1/4,1/2]"), arc("[0,1/4]")],
            [arc("[1/4,3/4]"), arc("[1/8,1/2]")],
        )
        assert Violation("crossing", (arc("[1/8,1/2]"), arc("[1/4,3/4]"))) in violations

    def test_violation_string(self):
        """Test the textual form of a violation."""
        violation = Violation("crossing", (arc("[1/4,3/4]"), HALF_ARC))
        assert str(violation) == "crossing [1/4,3/4] [0,1/2]"
        assert violation.to_dict() == {"kind": "crossing", "arcs": ["[1/4,3/4]", "[0,1/2]"]}


class TestSerialization:
    def test_from_dict(self):
        """Test both arc notations."""
        assert FTessellation.from_dict({"removed": ["[0,1/2]"]}) == EDGE
        assert FTessellation.from_dict({"removed": [["0", "1/2"]]}) == EDGE
        assert FTessellation.from_dict({}) == BASE

    def test_to_dict(self):
        """Test the sorted textual form."""
        assert FLIPPED.to_dict() == {"removed": ["[0,1/2]"], "added": ["[1/4,3/4]"]}
        assert FTessellation.from_dict(PENTAGON.to_dict()) == PENTAGON

    def test_unknown_keys(self):
        """Test that unknown keys raise ParseError."""
        with pytest.raises(ParseError):
            FTessellation.from_dict({"removed": [], "extra": []})

    def test_not_an_object(self):
        """Test that non-objects raise ParseError."""
        with pytest.raises(ParseError):
            FTessellation.from_dict(["[0,1/2]"])  # type: ignore[arg-type]

    def test_malformed_arc(self):
        """Test that arcs with the wrong shape raise ParseError."""
        with pytest.raises(ParseError):
            FTessellation.from_dict({"removed": [["0", "1/4", "1/2"]]})

    def test_string_representations(self):
        """Test str and repr."""
        assert str(FLIPPED) == "A_F - {[0,1/2]} + {[1/4,3/4]}"
        assert repr(EDGE) == "FTessellation.from_dict({'removed': ['[0,1/2]'], 'added': []})"


class TestRankAndComponents:
    def test_rank(self):
        """Test ranks of small tessellations."""
        assert rank(EDGE) == 1
        assert FLIPPED.rank == 0
        assert PENTAGON.rank == 2
        assert TWO_SQUARES.rank == 2

    def test_square_component(self):
        """Test the single square of a rank-1 tessellation."""
        assert nontriangular_components(EDGE) == [points("0,1/4,1/2,3/4")]

    def test_pentagon_component(self):
        """Test one pentagonal component."""
        assert nontriangular_components(PENTAGON) == [points("0,1/4,3/8,1/2,3/4")]

    def test_two_square_components(self):
        """Test two square components."""
        assert nontriangular_components(TWO_SQUARES) == [
            points("0,1/8,1/4,1/2"),
            points("0,1/2,5/8,3/4"),
        ]

    def test_cell_of(self):
        """Test the product decomposition of cells."""
        assert cell_of(EDGE).factor_sizes == (4,)
        assert cell_of(PENTAGON).factor_sizes == (5,)
        assert cell_of(TWO_SQUARES).factor_sizes == (4, 4)
        assert cell_of(TWO_SQUARES).dimension == 2
        assert cell_of(BASE).factor_sizes == ()


class TestSupport:
    def test_base_support(self):
        """Test the support triangle of A_F."""
        assert str(support_polygon(BASE)) == "0,1/2,3/4"

    def test_support_contains_removed_arc(self):
        """Test that removed arcs become diagonals of the support."""
        assert str(EDGE.support) == "0,1/4,1/2,3/4"
        assert str(support_polygon(FTessellation(removed=[arc("[1/4,1/2]")]))) == "0,1/4,3/8,1/2"

    def test_support_contains_added_endpoints(self):
        """Test that added arc endpoints are support breakpoints."""
        assert set(points("1/4,3/4")) <= set(FLIPPED.support.breakpoints)

    def test_arcs_within(self, square_window):
        """Test the arcs of a tessellation inside a window."""
        assert FLIPPED.arcs_within(square_window) == square_window.sides() | {arc("[1/4,3/4]")}

    def test_arcs_within_too_small(self):
        """Test that a window missing the support raises WindowError."""
        with pytest.raises(WindowError):
            EDGE.arcs_within(StandardPartition.parse("0,1/2,3/4"))

    def test_arcs_within_needs_refinement(self):
        """Test that a window must refine the support, not just hold arc endpoints."""
        with pytest.raises(WindowError):
            BASE.arcs_within(StandardPartition.parse("0,1/4,1/2"))
        with pytest.raises(WindowError):
            EDGE.arcs_within(StandardPartition.parse("0,1/4,1/2"))
        with pytest.raises(WindowError):
            window_polygon(EDGE, StandardPartition.parse("0,1/4,1/2"))

    def test_arcs_within_refining_window(self):
        """Test that any refinement of the support is accepted."""
        window = EDGE.support.subdivide()
        assert window.is_refinement_of(EDGE.support)
        assert EDGE.arcs_within(window) == base_arcs_in_window(window) - {HALF_ARC}


class TestOrder:
    def test_intersect(self):
        """Test that the two vertices of an edge meet in the edge."""
        assert intersect(BASE, FLIPPED) == EDGE
        assert intersect(FLIPPED, FLIPPED) == FLIPPED

    def test_intersect_laws(self, rng, eight_gon):
        """Test that intersection is commutative, associative and an upper bound."""
        for _ in range(40):
            a, b, c = (random_tessellation(rng, eight_gon) for _ in range(3))
            ab = intersect(a, b)
            assert ab == intersect(b, a)
            assert intersect(ab, c) == intersect(a, intersect(b, c))
            assert leq(a, ab)
            assert leq(b, ab)
            assert intersect(a, a) == a

    def test_leq(self):
        """Test the face order."""
        assert leq(BASE, EDGE)
        assert leq(FLIPPED, EDGE)
        assert not leq(EDGE, BASE)
        assert leq(EDGE, EDGE)

    def test_containing_triangulations(self):
        """Test the vertices of small cells."""
        assert containing_triangulations(EDGE) == [BASE, FLIPPED]
        assert len(containing_triangulations(PENTAGON)) == 5
        assert len(containing_triangulations(TWO_SQUARES)) == 4
        assert containing_triangulations(BASE) == [BASE]

    def test_containing_triangulations_bound(self):
        """Test the rank guard."""
        with pytest.raises(BudgetExceededError):
            containing_triangulations(PENTAGON, bound=1)


class TestFlip:
    def test_flip_diameter(self):
        """Test flipping the diameter of A_F."""
        assert flip(BASE, HALF_ARC) == FLIPPED
        assert flip(FLIPPED, arc("[1/4,3/4]")) == BASE

    def test_flip_arc(self):
        """Test the new diagonal of a flip."""
        edge, new = flip_arc(BASE, arc("[0,1/4]"))
        assert edge == FTessellation(removed=[arc("[0,1/4]")])
        assert new == arc("[1/8,1/2]")

    def test_flip_requires_triangulation(self):
        """Test that rank-1 tessellations cannot be flipped."""
        with pytest.raises(NotTriangulationError):
            flip(EDGE, arc("[0,1/4]"))

    def test_flip_requires_own_arc(self):
        """Test that the arc must belong to the triangulation."""
        with pytest.raises(InvalidPolygonError):
            flip(BASE, arc("[1/4,3/4]"))

    def test_with_and_without(self):
        """Test single-arc edits."""
        assert BASE.without_arc(HALF_ARC) == EDGE
        assert EDGE.with_arc(HALF_ARC) == BASE
        assert EDGE.with_arc(arc("[1/4,3/4]")) == FLIPPED
        assert FLIPPED.without_arc(arc("[1/4,3/4]")) == EDGE
        with pytest.raises(InvalidPolygonError):
            EDGE.without_arc(HALF_ARC)
        with pytest.raises(InvalidTessellationError):
            BASE.with_arc(arc("[1/4,3/4]"))


class TestWindowPolygon:
    def test_to_polygon(self, square_window):
        """Test reading a tessellation inside a window."""
        assert window_polygon(BASE, square_window) == PolygonTessellation(4, [(1, 3)])
        assert window_polygon(FLIPPED, square_window) == PolygonTessellation(4, [(2, 4)])
        assert window_polygon(EDGE, square_window) == PolygonTessellation(4)

    def test_from_polygon(self, square_window):
        """Test writing a polygon tessellation back."""
        assert from_window_polygon(PolygonTessellation(4, [(2, 4)]), square_window) == FLIPPED
        assert from_window_polygon(PolygonTessellation(4), square_window) == EDGE

    def test_size_mismatch(self, square_window):
        """Test that a polygon of another size raises WindowError."""
        with pytest.raises(WindowError):
            from_window_polygon(PolygonTessellation(5), square_window)

    def test_round_trip_in_eight_gon(self, eight_gon):
        """Test that every face of A(P_8) survives the bridge."""
        from stasheff.core.associahedron import enumerate_tessellations

        for t in enumerate_tessellations(8)[:200]:
            b = from_window_polygon(t, eight_gon)
            assert b.rank == t.dimension
            assert window_polygon(b, eight_gon) == t
