import pytest

from stasheff.core.dyadic import (
    HALF,
    HALF_ARC,
    TRIVIAL_PARTITION,
    ZERO,
    Arc,
    Dyadic,
    DyadicInterval,
    StandardPartition,
    arc_interval,
    arcs_cross,
    base_arcs_in_window,
    base_diagonals_in_window,
    cyclically_between,
    in_base_triangulation,
    normalize,
    polygon_sides,
    refine_common,
)
from stasheff.core.exceptions import (
    DegenerateIntervalError,
    DegeneratePolygonError,
    NotStandardError,
    ParseError,
)
from stasheff.core.sampling import random_partition


def arcs(*texts: str) -> frozenset[Arc]:
    return frozenset(Arc.parse(text) for text in texts)


class TestDyadic:
    def test_canonical_form(self):
        """Test that numerators and exponents are reduced."""
        assert Dyadic(2, 2) == Dyadic(1, 1)
        assert Dyadic(6, 3).numerator == 3
        assert Dyadic(6, 3).exponent == 2

    def test_reduced_modulo_one(self):
        """Test that values are points of the circle."""
        assert Dyadic(4, 2) == ZERO
        assert Dyadic(5, 2) == Dyadic(1, 2)
        assert Dyadic(-1, 2) == Dyadic(3, 2)

    def test_negative_exponent_rejected(self):
        """Test that a negative exponent raises ValueError."""
        with pytest.raises(ValueError):
            Dyadic(1, -1)

    def test_parse_forms(self):
        """Test the accepted textual forms."""
        assert Dyadic.parse("3/8") == Dyadic(3, 3)
        assert Dyadic.parse("3/2^3") == Dyadic(3, 3)
        assert Dyadic.parse("0") == ZERO
        assert Dyadic.parse("1") == ZERO
        assert Dyadic.parse(" 1 / 2 ") == HALF

    @pytest.mark.parametrize("text", ["abc", "1/3", "5/4", "-1/2", "", "1/0"])
    def test_parse_invalid(self, text):
        """Test that malformed or out-of-range text raises ParseError."""
        with pytest.raises(ParseError):
            Dyadic.parse(text)

    def test_ordering(self):
        """Test ordering on representatives in [0, 1)."""
        assert Dyadic(1, 2) < HALF
        assert Dyadic(3, 3) <= Dyadic(3, 3)
        assert Dyadic(7, 3) > Dyadic(3, 2)
        assert sorted([Dyadic(3, 2), ZERO, Dyadic(1, 3)]) == [ZERO, Dyadic(1, 3), Dyadic(3, 2)]

    def test_string_representations(self):
        """Test str and repr."""
        assert str(Dyadic(3, 3)) == "3/8"
        assert str(ZERO) == "0"
        assert repr(Dyadic(3, 3)) == "Dyadic(3, 3)"

    def test_at_exponent(self):
        """Test numerators over a common denominator."""
        assert HALF.at_exponent(3) == 4
        with pytest.raises(ValueError):
            Dyadic(1, 3).at_exponent(1)

    def test_normalize(self):
        """Test the normalize helper."""
        assert normalize(2, 2) == HALF
        assert normalize(4, 2) == ZERO


class TestCyclicallyBetween:
    def test_inside_and_outside(self):
        """Test points on either side of a counterclockwise interval."""
        a, b = Dyadic(1, 2), Dyadic(3, 2)
        assert cyclically_between(HALF, a, b)
        assert not cyclically_between(ZERO, a, b)
        assert cyclically_between(ZERO, b, a)

    def test_endpoints_excluded(self):
        """Test that the endpoints are not strictly between."""
        assert not cyclically_between(Dyadic(1, 2), Dyadic(1, 2), HALF)
        assert not cyclically_between(HALF, Dyadic(1, 2), HALF)

    def test_degenerate_interval(self):
        """Test that equal endpoints raise DegenerateIntervalError."""
        with pytest.raises(DegenerateIntervalError):
            cyclically_between(ZERO, HALF, HALF)


class TestArc:
    def test_endpoints_are_ordered(self):
        """Test that the smaller endpoint comes first."""
        arc = Arc("3/4", "1/4")
        assert arc.start == Dyadic(1, 2)
        assert arc.end == Dyadic(3, 2)
        assert arc.endpoints == (Dyadic(1, 2), Dyadic(3, 2))

    def test_one_is_zero(self):
        """Test that 1 and 0 are the same endpoint."""
        assert Arc.parse("[3/4,1]") == Arc.parse("[0,3/4]")

    def test_degenerate_arc(self):
        """Test that coinciding endpoints raise."""
        with pytest.raises(DegenerateIntervalError):
            Arc(HALF, HALF)
        with pytest.raises(ParseError):
            Arc.parse("[0,1]")

    def test_parse_invalid(self):
        """Test that malformed arcs raise ParseError."""
        with pytest.raises(ParseError):
            Arc.parse("0,1/2")
        with pytest.raises(ParseError):
            Arc.parse("[0,1/3]")

    def test_string_representations(self):
        """Test str and repr."""
        arc = Arc.parse("[1/4, 3/4]")
        assert str(arc) == "[1/4,3/4]"
        assert repr(arc) == "Arc.parse('[1/4,3/4]')"

    def test_shares_endpoint(self):
        """Test shared endpoints."""
        assert HALF_ARC.shares_endpoint(Arc.parse("[0,1/4]"))
        assert not HALF_ARC.shares_endpoint(Arc.parse("[1/4,3/4]"))

    def test_crossing(self):
        """Test the crossing relation."""
        assert arcs_cross(HALF_ARC, Arc.parse("[1/4,3/4]"))
        assert arcs_cross(Arc.parse("[1/4,3/4]"), HALF_ARC)
        assert not arcs_cross(HALF_ARC, Arc.parse("[0,1/4]"))
        assert not arcs_cross(HALF_ARC, Arc.parse("[1/8,1/4]"))
        assert not arcs_cross(HALF_ARC, HALF_ARC)


class TestDyadicInterval:
    def test_bounds(self):
        """Test endpoints, with the last interval wrapping to 0."""
        interval = DyadicInterval(3, 2)
        assert interval.left == Dyadic(3, 2)
        assert interval.right == ZERO
        assert interval.bounds_text == ("3/4", "1")
        assert str(interval) == "[3/4,1]"

    def test_invalid_index(self):
        """Test that indices outside 0..2^n - 1 raise NotStandardError."""
        with pytest.raises(NotStandardError):
            DyadicInterval(4, 2)
        with pytest.raises(NotStandardError):
            DyadicInterval(0, -1)

    def test_from_bounds(self):
        """Test construction from its endpoints."""
        assert DyadicInterval.from_bounds((1, 2), (1, 1)) == DyadicInterval(1, 2)
        assert DyadicInterval.parse("1/2", "1") == DyadicInterval(1, 1)
        with pytest.raises(NotStandardError):
            DyadicInterval.from_bounds((0, 0), (3, 2))
        with pytest.raises(NotStandardError):
            DyadicInterval.parse("1/4", "3/4")

    def test_tree_structure(self):
        """Test children, parent and siblings."""
        left, right = DyadicInterval(1, 2).children()
        assert (left, right) == (DyadicInterval(2, 3), DyadicInterval(3, 3))
        assert left.parent() == DyadicInterval(1, 2)
        assert DyadicInterval(0, 0).parent() is None
        assert left.is_left_sibling_of(right)
        assert not right.is_left_sibling_of(left)

    def test_containment(self):
        """Test subinterval and point containment."""
        half = DyadicInterval(0, 1)
        assert half.contains(DyadicInterval(3, 3))
        assert not half.contains(DyadicInterval(4, 3))
        assert half.contains_point(ZERO)
        assert not half.contains_point(HALF)
        assert half.strictly_contains_point(Dyadic(1, 2))
        assert not half.strictly_contains_point(ZERO)

    def test_chord(self):
        """Test the A_F chord spanned by an interval."""
        assert DyadicInterval(0, 0).chord() is None
        assert DyadicInterval(1, 1).chord() == HALF_ARC
        assert DyadicInterval(1, 2).chord() == Arc.parse("[1/4,1/2]")


class TestStandardPartition:
    def test_parse(self):
        """Test parsing a breakpoint list."""
        p = StandardPartition.parse("0,1/4,1/2,3/4")
        assert len(p) == 4
        assert p.breakpoints == (ZERO, Dyadic(1, 2), HALF, Dyadic(3, 2))
        assert str(p) == "0,1/4,1/2,3/4"
        assert repr(p) == "StandardPartition.parse('0,1/4,1/2,3/4')"

    def test_zero_is_implicit(self):
        """Test that 0 is always a breakpoint."""
        assert StandardPartition.parse("1/2") == StandardPartition.parse("0,1/2")

    @pytest.mark.parametrize("text", ["0,3/4", "0,1/4", "0,1/3", "0,x"])
    def test_parse_invalid(self, text):
        """Test that non-standard partitions raise ParseError."""
        with pytest.raises(ParseError):
            StandardPartition.parse(text)

    def test_intervals_must_tile(self):
        """Test that gaps and overlaps raise NotStandardError."""
        with pytest.raises(NotStandardError):
            StandardPartition([DyadicInterval(0, 1)])
        with pytest.raises(NotStandardError):
            StandardPartition([DyadicInterval(0, 1), DyadicInterval(1, 2), DyadicInterval(1, 1)])
        with pytest.raises(NotStandardError):
            StandardPartition([])

    def test_intervals_in_any_order(self):
        """Test that intervals are sorted on construction."""
        p = StandardPartition([DyadicInterval(1, 1), DyadicInterval(0, 1)])
        assert str(p) == "0,1/2"

    def test_coarsest_containing(self):
        """Test the coarsest partition with given breakpoints."""
        assert str(StandardPartition.coarsest_containing([Dyadic(3, 3)])) == "0,1/4,3/8,1/2"
        assert StandardPartition.coarsest_containing([]) == TRIVIAL_PARTITION

    def test_subdivide_and_refinement(self):
        """Test subdivision and the refinement relation."""
        p = StandardPartition.parse("0,1/2,3/4")
        finer = p.subdivide()
        assert str(finer) == "0,1/4,1/2,5/8,3/4,7/8"
        assert finer.is_refinement_of(p)
        assert not p.is_refinement_of(finer)

    def test_interval_containing(self):
        """Test lookup of the interval holding a point."""
        p = StandardPartition.parse("0,1/2,3/4")
        assert p.interval_containing(Dyadic(5, 3)) == DyadicInterval(2, 2)
        assert p.interval_containing(HALF) == DyadicInterval(2, 2)

    def test_sides(self):
        """Test the chords of the intervals."""
        p = StandardPartition.parse("0,1/4,1/2,3/4")
        assert p.sides() == arcs("[0,1/4]", "[1/4,1/2]", "[1/2,3/4]", "[0,3/4]")
        assert polygon_sides(p) == p.sides()
        with pytest.raises(DegeneratePolygonError):
            polygon_sides(StandardPartition.parse("0,1/2"))

    def test_refine_common(self):
        """Test the common refinement of two partitions."""
        p = StandardPartition.parse("0,1/2,3/4")
        q = StandardPartition.parse("0,1/4,1/2")
        assert str(refine_common(p, q)) == "0,1/4,1/2,3/4"


class TestBaseTriangulation:
    def test_membership(self):
        """Test which arcs belong to A_F."""
        assert in_base_triangulation(HALF_ARC)
        assert in_base_triangulation(Arc.parse("[1/4,1/2]"))
        assert in_base_triangulation(Arc.parse("[3/4,1]"))
        assert in_base_triangulation(Arc.parse("[5/8,3/4]"))
        assert not in_base_triangulation(Arc.parse("[1/4,3/4]"))
        assert not in_base_triangulation(Arc.parse("[1/8,1/2]"))
        assert not in_base_triangulation(Arc.parse("[1/4,5/8]"))

    def test_arc_interval(self):
        """Test the interval whose chord is an A_F arc."""
        assert arc_interval(HALF_ARC) == DyadicInterval(0, 1)
        assert arc_interval(Arc.parse("[0,3/4]")) == DyadicInterval(3, 2)
        assert arc_interval(Arc.parse("[3/8,1/2]")) == DyadicInterval(3, 3)
        assert arc_interval(Arc.parse("[1/4,3/4]")) is None

    def test_base_arcs_in_window(self):
        """Test the restriction of A_F to an inscribed polygon."""
        square = StandardPartition.parse("0,1/4,1/2,3/4")
        assert base_arcs_in_window(square) == square.sides() | {HALF_ARC}
        assert base_diagonals_in_window(square) == {HALF_ARC}

    def test_window_diagonal_count(self):
        """Test that a window with k vertices holds k - 3 A_F diagonals."""
        window = StandardPartition.parse("0,1/8,1/4,3/8,1/2,5/8,3/4,7/8")
        diagonals = base_diagonals_in_window(window)
        assert len(diagonals) == 5
        assert diagonals == arcs("[0,1/2]", "[0,1/4]", "[1/4,1/2]", "[1/2,3/4]", "[0,3/4]")

    def test_degenerate_window(self):
        """Test that windows with fewer than 3 intervals raise."""
        with pytest.raises(DegeneratePolygonError):
            base_arcs_in_window(StandardPartition.parse("0,1/2"))


def random_arc(rng, exponent: int = 5) -> Arc:
    a, b = rng.sample(range(1 << exponent), 2)
    return Arc(Dyadic(a, exponent), Dyadic(b, exponent))


class TestInvariants:
    def test_base_membership_exhaustive(self):
        """Test A_F membership against a direct listing on the 1/64 grid."""
        expected = {HALF_ARC} | {
            Arc(Dyadic(m, n), Dyadic(m + 1, n)) for n in range(2, 7) for m in range(1 << n)
        }
        for i in range(64):
            for j in range(i + 1, 64):
                a = Arc(Dyadic(i, 6), Dyadic(j, 6))
                assert in_base_triangulation(a) == (a in expected), str(a)
                assert (arc_interval(a) is not None) == (a in expected)

    def test_normalize_idempotent(self):
        """Test that normalizing a canonical dyadic returns it unchanged."""
        for exponent in range(7):
            for numerator in range(-70, 70):
                d = normalize(numerator, exponent)
                assert normalize(d.numerator, d.exponent) == d
                assert 0 <= d.numerator < max(1, 1 << d.exponent)

    def test_crossing_symmetric(self, rng):
        """Test that crossing is symmetric on random arcs."""
        for _ in range(500):
            a1, a2 = random_arc(rng), random_arc(rng)
            assert arcs_cross(a1, a2) == arcs_cross(a2, a1)

    def test_shared_endpoint_never_crosses(self, rng):
        """Test that arcs with a common endpoint never cross."""
        for _ in range(300):
            a1 = random_arc(rng)
            other = rng.choice(
                [Dyadic(k, 5) for k in range(32) if Dyadic(k, 5) not in a1.endpoints]
            )
            a2 = Arc(rng.choice(a1.endpoints), other)
            assert not arcs_cross(a1, a2)
            assert not arcs_cross(a2, a1)

    def test_refine_common_laws(self, rng):
        """Test that the common refinement is commutative and associative."""
        for _ in range(100):
            p, q, r = (random_partition(rng, rng.randint(1, 12), max_level=5) for _ in range(3))
            pq = refine_common(p, q)
            assert pq == refine_common(q, p)
            assert refine_common(pq, r) == refine_common(p, refine_common(q, r))
            assert pq.is_refinement_of(p)
            assert pq.is_refinement_of(q)
            assert refine_common(p, p) == p
