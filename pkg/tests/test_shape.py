import pytest

from stasheff.core.exceptions import UnsupportedRankError
from stasheff.core.shape import LinkShape


class TestLinkShape:
    @pytest.mark.parametrize(
        ("sizes", "shape"),
        [
            ([4, 4], LinkShape.SQUARE_CYCLE),
            ([5], LinkShape.PENTAGON_CYCLE),
            ([4, 4, 4], LinkShape.CUBE),
            ([5, 4], LinkShape.PRISM),
            ([4, 5], LinkShape.PRISM),
            ([6], LinkShape.ASSOCIAHEDRON),
        ],
    )
    def test_lookup(self, sizes, shape):
        """Test the lookup by component side counts."""
        assert LinkShape.for_factor_sizes(sizes) is shape

    def test_vertex_counts(self):
        """Test the vertex count of each shape."""
        counts = {
            shape.name: shape.vertex_count
            for shape in (
                LinkShape.SQUARE_CYCLE,
                LinkShape.PENTAGON_CYCLE,
                LinkShape.CUBE,
                LinkShape.PRISM,
                LinkShape.ASSOCIAHEDRON,
            )
        }
        assert counts == {
            "square-cycle": 4,
            "pentagon-cycle": 5,
            "cube": 8,
            "prism": 10,
            "associahedron": 14,
        }

    def test_rank_and_cycles(self):
        """Test that rank-2 shapes are cycles."""
        assert LinkShape.SQUARE_CYCLE.rank == 2
        assert LinkShape.PENTAGON_CYCLE.is_cycle
        assert LinkShape.PRISM.rank == 3
        assert not LinkShape.CUBE.is_cycle

    @pytest.mark.parametrize("sizes", [[4], [7], [4, 4, 4, 4], []])
    def test_unsupported(self, sizes):
        """Test that other ranks have no shape."""
        with pytest.raises(UnsupportedRankError):
            LinkShape.for_factor_sizes(sizes)

    def test_string_representations(self):
        """Test str and repr."""
        assert str(LinkShape.CUBE) == "cube"
        assert repr(LinkShape.PENTAGON_CYCLE) == "LinkShape.PENTAGON_CYCLE"
