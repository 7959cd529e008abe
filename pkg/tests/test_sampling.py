import random

import pytest

from stasheff.core.dyadic import StandardPartition
from stasheff.core.ftess import BASE
from stasheff.core.sampling import (
    random_element,
    random_partition,
    random_tessellation,
    random_triangulation,
)
from stasheff.core.thompson import OrientationSign, reduce_minimal, sign


class TestRandomPartition:
    def test_size(self, rng):
        """Test the requested number of intervals."""
        for size in (1, 2, 5, 8):
            assert len(random_partition(rng, size, max_level=3)) == size

    def test_level_cap(self, rng):
        """Test that no interval is finer than max_level."""
        partition = random_partition(rng, 8, max_level=3)
        assert all(piece.level == 3 for piece in partition)

    @pytest.mark.parametrize("size", [0, 9])
    def test_invalid_size(self, rng, size):
        """Test sizes outside 1..2^max_level."""
        with pytest.raises(ValueError):
            random_partition(rng, size, max_level=3)


class TestRandomElement:
    def test_reduced(self, rng):
        """Test that elements come back reduced."""
        for _ in range(30):
            t = random_element(rng)
            assert reduce_minimal(t).pairs == t.pairs

    def test_preserving_only(self, rng):
        """Test that reversing=False stays inside T."""
        for _ in range(30):
            assert sign(random_element(rng, reversing=False)) == OrientationSign.PRESERVING

    def test_seed_determines_sample(self):
        """Test reproducibility."""
        first = [random_element(random.Random(5)) for _ in range(3)]
        second = [random_element(random.Random(5)) for _ in range(3)]
        assert first == second


class TestRandomTessellations:
    def test_triangulation(self, rng, eight_gon):
        """Test that random vertices live in the window."""
        for _ in range(20):
            vertex = random_triangulation(rng, eight_gon)
            assert vertex.is_triangulation
            assert eight_gon.is_refinement_of(vertex.support)

    def test_triangle_window(self, rng):
        """Test that the support triangle only holds A_F."""
        assert random_triangulation(rng, StandardPartition.parse("0,1/2,3/4")) == BASE

    def test_no_flips(self, rng, eight_gon):
        """Test that a walk of length 0 stays at A_F."""
        assert random_triangulation(rng, eight_gon, flips=0) == BASE

    def test_tessellation_rank(self, rng, eight_gon):
        """Test the rank cap."""
        for _ in range(20):
            b = random_tessellation(rng, eight_gon, max_rank=2)
            assert 0 <= b.rank <= 2
