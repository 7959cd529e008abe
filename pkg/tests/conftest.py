"""Shared pytest fixtures for the Stasheff test-suite."""

import random
import sys
from pathlib import Path
from typing import Any

import pytest

# Add the project root to Python path to ensure imports work
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


@pytest.fixture
def rng() -> random.Random:
    """Provide a seeded random generator."""
    return random.Random(1729)


@pytest.fixture
def square_window() -> Any:
    """Provide the 4-vertex window 0,1/4,1/2,3/4."""
    from stasheff.core.dyadic import StandardPartition

    return StandardPartition.parse("0,1/4,1/2,3/4")


@pytest.fixture
def eight_gon() -> Any:
    """Provide the 8-vertex window on the multiples of 1/8."""
    from stasheff.core.complexnav import EIGHT_GON

    return EIGHT_GON
