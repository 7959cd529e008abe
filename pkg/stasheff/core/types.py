"""Type definitions, type aliases and desk-scale limits for Stasheff.

This module contains the common aliases used throughout the library and the
default resource bounds every search and enumeration falls back to.
"""

from __future__ import annotations

from typing import Literal

Orientation = Literal[1, -1]
FormatCode = Literal["json", "dot", "text"]
ViolationKind = Literal["crossing", "redundant", "removed-not-base", "added-in-base"]

# Largest polygon the finite associahedron commands accept
MAX_POLYGON_SIZE = 9
DEFAULT_SPHERE_BOUND = 9

# containing_triangulations refuses tessellations above this rank
DEFAULT_RANK_BOUND = 8

# Window BFS
DEFAULT_MAX_STATES = 200_000
DEFAULT_MAX_EXPANSIONS = 0

# faithfulness_witness
DEFAULT_WITNESS_EXPANSIONS = 10
DEFAULT_WITNESS_CANDIDATES = 20_000
