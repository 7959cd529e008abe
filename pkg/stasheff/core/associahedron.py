"""Finite Stasheff associahedra for Stasheff.

This module provides the faces of the associahedron A(P_n) as minimal
tessellations of a convex n-gon (sets of pairwise non-crossing diagonals), the
face lattice ordered by reverse inclusion, the flip graph of triangulations,
the duality between triangulations and rooted binary trees, and a
combinatorial check that the boundary of A(P_n) looks like a sphere.

Vertices of P_n are labeled 1..n in cyclic order; the sides are (i, i+1) and
(1, n).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Hashable, Iterable, Sequence, TypeVar

from stasheff.core.exceptions import (
    BudgetExceededError,
    InvalidPolygonError,
    NotTriangulationError,
)
from stasheff.core.types import DEFAULT_SPHERE_BOUND

logger = logging.getLogger(__name__)

Diagonal = tuple[int, int]
V = TypeVar("V", bound=Hashable)


def _crosses(d1: Diagonal, d2: Diagonal) -> bool:
    (a, b), (c, d) = d1, d2
    return a < c < b < d or c < a < d < b


def _is_side(n: int, i: int, j: int) -> bool:
    return j - i == 1 or (i == 1 and j == n)


def _check_size(n: int) -> None:
    if n < 3:
        raise InvalidPolygonError(f"A polygon needs at least 3 vertices, got {n}")


@dataclass(frozen=True, slots=True)
class PolygonTessellation:
    """A minimal tessellation of P_n: a set of pairwise non-crossing diagonals.

    Each tessellation indexes one face of A(P_n); triangulations (n - 3
    diagonals) are the vertices and the empty set is the top cell.

    Attributes:
        n: Number of polygon vertices
        diagonals: The diagonals as pairs (i, j) with i < j

    Examples:
        >>> t = PolygonTessellation(5, [(3, 1), (1, 4)])
        >>> t.sorted_diagonals
        ((1, 3), (1, 4))
        >>> t.dimension
        0
        >>> str(PolygonTessellation(4))
        '{}_4'
    """

    n: int
    diagonals: frozenset[Diagonal]

    def __init__(self, n: int, diagonals: Iterable[Sequence[int]] = ()) -> None:
        """Create a tessellation, normalizing diagonal orientation.

        Raises:
            InvalidPolygonError: If n < 3, a pair is not a diagonal, or two
                diagonals cross
        """
        _check_size(n)
        normalized: set[Diagonal] = set()
        for pair in diagonals:
            i, j = sorted((int(pair[0]), int(pair[1])))
            if not 1 <= i < j <= n:
                raise InvalidPolygonError(f"({i},{j}) is not a diagonal of P_{n}")
            if _is_side(n, i, j):
                raise InvalidPolygonError(f"({i},{j}) is a side of P_{n}")
            normalized.add((i, j))
        for d1, d2 in combinations(sorted(normalized), 2):
            if _crosses(d1, d2):
                raise InvalidPolygonError(f"Diagonals {d1} and {d2} cross")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "diagonals", frozenset(normalized))

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> PolygonTessellation:
        """Build from the JSON form {"n": int, "diagonals": [[i, j], ...]}."""
        return cls(int(data["n"]), data.get("diagonals", []))

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "diagonals": [list(d) for d in self.sorted_diagonals]}

    @property
    def sorted_diagonals(self) -> tuple[Diagonal, ...]:
        return tuple(sorted(self.diagonals))

    @property
    def dimension(self) -> int:
        return self.n - 3 - len(self.diagonals)

    @property
    def is_triangulation(self) -> bool:
        return len(self.diagonals) == self.n - 3

    def edges(self) -> frozenset[Diagonal]:
        """Diagonals together with the sides of the polygon."""
        sides = {(i, i + 1) for i in range(1, self.n)} | {(1, self.n)}
        return self.diagonals | sides

    def without(self, d: Diagonal) -> PolygonTessellation:
        return PolygonTessellation(self.n, self.diagonals - {tuple(sorted(d))})

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, PolygonTessellation):
            return NotImplemented
        return _face_order(self) < _face_order(other)

    def __str__(self) -> str:
        inner = ",".join(f"({i},{j})" for i, j in self.sorted_diagonals)
        return f"{{{inner}}}_{self.n}"

    def __repr__(self) -> str:
        return f"PolygonTessellation({self.n}, {list(self.sorted_diagonals)})"


def _face_order(t: PolygonTessellation) -> tuple[int, int, tuple[Diagonal, ...]]:
    return (t.n, -len(t.diagonals), t.sorted_diagonals)


def all_diagonals(n: int) -> tuple[Diagonal, ...]:
    """Every diagonal of P_n in lexicographic order."""
    _check_size(n)
    return tuple(
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
        if not _is_side(n, i, j)
    )


@lru_cache(maxsize=32)
def _faces(n: int) -> tuple[PolygonTessellation, ...]:
    candidates = all_diagonals(n)
    found: list[PolygonTessellation] = []

    def extend(start: int, chosen: list[Diagonal]) -> None:
        found.append(PolygonTessellation(n, chosen))
        for k in range(start, len(candidates)):
            d = candidates[k]
            if not any(_crosses(d, c) for c in chosen):
                chosen.append(d)
                extend(k + 1, chosen)
                chosen.pop()

    extend(0, [])
    found.sort(key=_face_order)
    logger.debug("Enumerated %d faces of A(P_%d)", len(found), n)
    return tuple(found)


def enumerate_tessellations(n: int) -> list[PolygonTessellation]:
    """All minimal tessellations of P_n, each exactly once.

    Faces are ordered by decreasing diagonal count, then lexicographically.

    Raises:
        InvalidPolygonError: If n < 3

    Examples:
        >>> [str(t) for t in enumerate_tessellations(4)]
        ['{(1,3)}_4', '{(2,4)}_4', '{}_4']
    """
    _check_size(n)
    return list(_faces(n))


def enumerate_triangulations(n: int) -> list[PolygonTessellation]:
    """The dimension-0 faces of A(P_n)."""
    return [t for t in enumerate_tessellations(n) if t.is_triangulation]


def face_dim(t: PolygonTessellation) -> int:
    """Dimension n - 3 - |diagonals| of the face indexed by t."""
    return t.dimension


@dataclass(frozen=True, slots=True)
class FaceLattice:
    """The face poset of A(P_n) with its cover relations.

    A cover (i, j) means faces[j] is faces[i] with exactly one diagonal removed,
    so the cell of faces[i] is a facet of the cell of faces[j].
    """

    n: int
    faces: tuple[PolygonTessellation, ...]
    covers: tuple[tuple[int, int], ...]
    _index: dict[PolygonTessellation, int] = field(repr=False, compare=False)

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Face counts by dimension 0..n-3."""
        counts = Counter(face.dimension for face in self.faces)
        return tuple(counts[d] for d in range(self.n - 2))

    def index_of(self, face: PolygonTessellation) -> int:
        return self._index[face]

    def up(self, i: int) -> list[int]:
        """Indices of the faces covering faces[i]."""
        face = self.faces[i]
        return sorted(self._index[face.without(d)] for d in face.diagonals)

    def down(self, j: int) -> list[int]:
        """Indices of the facets of faces[j]."""
        face = self.faces[j]
        return sorted(
            self._index[PolygonTessellation(face.n, face.diagonals | {d})]
            for d in all_diagonals(face.n)
            if d not in face.diagonals
            and not any(_crosses(d, c) for c in face.diagonals)
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "f_vector": list(self.f_vector),
            "faces": [face.to_dict() for face in self.faces],
            "covers": [list(c) for c in self.covers],
        }


def face_lattice(n: int) -> FaceLattice:
    """Build the face lattice of A(P_n).

    Raises:
        InvalidPolygonError: If n < 3

    Examples:
        >>> face_lattice(5).f_vector
        (5, 5, 1)
    """
    faces = tuple(enumerate_tessellations(n))
    index = {face: i for i, face in enumerate(faces)}
    covers = sorted(
        (i, index[face.without(d)])
        for i, face in enumerate(faces)
        for d in face.diagonals
    )
    return FaceLattice(n, faces, tuple(covers), index)


def split_polygon(
    vertices: Sequence[V], chords: Iterable[tuple[V, V]]
) -> list[tuple[V, ...]]:
    """Cut a convex polygon along non-crossing chords.

    Vertices are given in cyclic order; every returned region keeps that order.
    Regions are sorted by the positions of their vertices.

    Raises:
        InvalidPolygonError: If a chord is not a diagonal of any current region
    """
    position = {v: i for i, v in enumerate(vertices)}
    regions: list[tuple[V, ...]] = [tuple(vertices)]
    for u, v in chords:
        for k, region in enumerate(regions):
            if u not in region or v not in region:
                continue
            iu, iv = sorted((region.index(u), region.index(v)))
            if iv - iu > 1 and not (iu == 0 and iv == len(region) - 1):
                regions[k : k + 1] = [
                    region[iu : iv + 1],
                    region[: iu + 1] + region[iv:],
                ]
                break
        else:
            raise InvalidPolygonError(f"Chord ({u},{v}) does not cut any region")
    return sorted(regions, key=lambda r: [position[v] for v in r])


def cut_regions(t: PolygonTessellation) -> list[tuple[int, ...]]:
    """The sub-polygons of P_n cut out by the diagonals of t, as label tuples.

    Examples:
        >>> cut_regions(PolygonTessellation(5, [(1, 3)]))
        [(1, 2, 3), (1, 3, 4, 5)]
    """
    return split_polygon(range(1, t.n + 1), t.sorted_diagonals)


def cut_polygons(t: PolygonTessellation) -> list[int]:
    """Side counts of the sub-polygons, in increasing order.

    These are the sizes n_i of the factors A(P_{n_i}) of the face of t.

    Examples:
        >>> cut_polygons(PolygonTessellation(6, [(1, 3), (1, 5)]))
        [3, 3, 4]
    """
    return sorted(len(region) for region in cut_regions(t))


def _apex(edges: frozenset[Diagonal], vertices: Iterable[int], i: int, j: int) -> int:
    for w in vertices:
        if tuple(sorted((i, w))) in edges and tuple(sorted((w, j))) in edges:
            return w
    raise NotTriangulationError(f"No triangle on ({i},{j})")


def flip(t: PolygonTessellation, d: Sequence[int]) -> PolygonTessellation:
    """Replace the diagonal d of the triangulation t by the other diagonal of
    the quadrilateral formed by the two triangles on d.

    Raises:
        NotTriangulationError: If t is not a triangulation
        InvalidPolygonError: If d is not a diagonal of t

    Examples:
        >>> flip(PolygonTessellation(5, [(1, 3), (1, 4)]), (1, 4))
        PolygonTessellation(5, [(1, 3), (3, 5)])
    """
    if not t.is_triangulation:
        raise NotTriangulationError(f"{t} is not a triangulation")
    i, j = sorted((int(d[0]), int(d[1])))
    if (i, j) not in t.diagonals:
        raise InvalidPolygonError(f"({i},{j}) is not a diagonal of {t}")
    edges = t.edges()
    inside = _apex(edges, range(i + 1, j), i, j)
    outside = _apex(edges, [*range(j + 1, t.n + 1), *range(1, i)], i, j)
    return PolygonTessellation(t.n, (t.diagonals - {(i, j)}) | {(inside, outside)})


def flip_graph(n: int) -> dict[PolygonTessellation, tuple[PolygonTessellation, ...]]:
    """Adjacency of the triangulations of P_n under flips (the 1-skeleton)."""
    return {
        t: tuple(sorted(flip(t, d) for d in t.sorted_diagonals))
        for t in enumerate_triangulations(n)
    }


@dataclass(frozen=True, slots=True)
class BinaryTree:
    """A rooted planar binary tree; a missing child is a leaf.

    Examples:
        >>> str(BinaryTree(BinaryTree(), None))
        '((*,*),*)'
    """

    left: BinaryTree | None = None
    right: BinaryTree | None = None

    @property
    def leaves(self) -> int:
        return (self.left.leaves if self.left else 1) + (
            self.right.leaves if self.right else 1
        )

    def __str__(self) -> str:
        left = str(self.left) if self.left else "*"
        right = str(self.right) if self.right else "*"
        return f"({left},{right})"


def _root_sequence(n: int, root_side: int | None) -> list[int]:
    side = n if root_side is None else root_side
    if not 1 <= side <= n:
        raise InvalidPolygonError(f"Side {side} is not a side of P_{n}")
    return [(side + k) % n + 1 for k in range(n)]


def dual_tree(t: PolygonTessellation, root_side: int | None = None) -> BinaryTree:
    """The rooted binary tree dual to the triangulation t.

    Side s joins vertices s and s + 1 (side n joins n and 1); the tree is rooted
    at the triangle on root_side (default n) and has the other n - 1 sides as
    leaves, read in cyclic order.

    Raises:
        NotTriangulationError: If t is not a triangulation

    Examples:
        >>> str(dual_tree(PolygonTessellation(4, [(1, 3)])))
        '((*,*),*)'
    """
    if not t.is_triangulation:
        raise NotTriangulationError(f"{t} is not a triangulation")
    sequence = _root_sequence(t.n, root_side)
    edges = t.edges()

    def build(a: int, b: int) -> BinaryTree | None:
        if b == a + 1:
            return None
        c = next(
            c
            for c in range(a + 1, b)
            if tuple(sorted((sequence[a], sequence[c]))) in edges
            and tuple(sorted((sequence[c], sequence[b]))) in edges
        )
        return BinaryTree(build(a, c), build(c, b))

    tree = build(0, t.n - 1)
    assert tree is not None
    return tree


def tree_to_tessellation(
    tree: BinaryTree, root_side: int | None = None
) -> PolygonTessellation:
    """Inverse of dual_tree: the triangulation of P_{leaves+1} dual to tree."""
    n = tree.leaves + 1
    sequence = _root_sequence(n, root_side)
    diagonals: list[Diagonal] = []

    def assign(node: BinaryTree, a: int) -> int:
        c = a + (node.left.leaves if node.left else 1)
        if node.left:
            assign(node.left, a)
            diagonals.append((sequence[a], sequence[c]))
        b = c + (node.right.leaves if node.right else 1)
        if node.right:
            assign(node.right, c)
            diagonals.append((sequence[c], sequence[b]))
        return b

    assign(tree, 0)
    return PolygonTessellation(n, diagonals)


def catalan(k: int) -> int:
    """The k-th Catalan number; P_n has catalan(n - 2) triangulations.

    Examples:
        >>> [catalan(k) for k in range(1, 8)]
        [1, 2, 5, 14, 42, 132, 429]
    """
    values = [1]
    for m in range(k):
        values.append(sum(values[i] * values[m - i] for i in range(m + 1)))
    return values[k]


def schroeder_hipparchus(k: int) -> int:
    """The k-th Schröder-Hipparchus number; A(P_n) has
    schroeder_hipparchus(n - 2) faces.

    Examples:
        >>> [schroeder_hipparchus(k) for k in range(1, 8)]
        [1, 3, 11, 45, 197, 903, 4279]
    """
    values = [1, 1]
    for m in range(2, k + 1):
        term = 3 * (2 * m - 1) * values[m - 1] - (m - 2) * values[m - 2]
        values.append(term // (m + 1))
    return values[k]


@dataclass(frozen=True, slots=True)
class SphereCheckReport:
    """Combinatorial evidence that the boundary of A(P_n) is a sphere S^(n-4)."""

    n: int
    f_vector: tuple[int, ...]
    euler_characteristic: int
    expected_euler: int
    components: int
    thin_faces: tuple[str, ...]
    diamond_failures: tuple[str, ...]

    @property
    def connected(self) -> bool:
        return self.components == 1

    @property
    def failures(self) -> list[str]:
        problems = []
        if self.euler_characteristic != self.expected_euler:
            problems.append(
                f"Euler characteristic {self.euler_characteristic}, "
                f"expected {self.expected_euler}"
            )
        if self.n >= 5 and not self.connected:
            problems.append(f"Boundary has {self.components} components")
        if self.n == 4 and self.components != 2:
            problems.append(f"S^0 boundary has {self.components} components")
        problems.extend(
            f"Face {face} lies in fewer than two cofaces" for face in self.thin_faces
        )
        problems.extend(self.diamond_failures)
        return problems

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "f_vector": list(self.f_vector),
            "euler_characteristic": self.euler_characteristic,
            "expected_euler": self.expected_euler,
            "components": self.components,
            "passed": self.passed,
            "failures": self.failures,
        }


def check_sphere_boundary(
    n: int, *, bound: int = DEFAULT_SPHERE_BOUND
) -> SphereCheckReport:
    """Check the combinatorial shadow of (A(P_n), boundary) = (ball, sphere).

    The boundary is every face except the top cell. Checked: its Euler
    characteristic equals that of S^(n-4), it is connected (n >= 5; for n = 4 it
    is two points), every face below the boundary's top dimension lies in at
    least two faces one dimension up, and every length-2 interval of the face
    poset has exactly two middle elements.

    Raises:
        InvalidPolygonError: If n < 4
        BudgetExceededError: If n exceeds bound

    Examples:
        >>> check_sphere_boundary(6).euler_characteristic
        2
    """
    if n < 4:
        raise InvalidPolygonError(f"The boundary sphere needs n >= 4, got {n}")
    if n > bound:
        raise BudgetExceededError(f"n = {n} exceeds the sphere-check bound {bound}")
    lattice = face_lattice(n)
    top = n - 3
    ups: dict[int, list[int]] = {i: [] for i in range(len(lattice.faces))}
    for i, j in lattice.covers:
        ups[i].append(j)
    boundary = [i for i, face in enumerate(lattice.faces) if face.dimension < top]

    f_vector = tuple(
        sum(1 for i in boundary if lattice.faces[i].dimension == d) for d in range(top)
    )
    euler = sum((-1) ** d * count for d, count in enumerate(f_vector))

    parent = {i: i for i in boundary if lattice.faces[i].dimension == 0}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in boundary:
        if lattice.faces[j].dimension == 1:
            a, b = lattice.down(j)
            parent[find(a)] = find(b)
    components = len({find(i) for i in parent})

    thin = tuple(
        str(lattice.faces[i])
        for i in boundary
        if lattice.faces[i].dimension < top - 1 and len(ups[i]) < 2
    )

    diamond_failures = []
    for i in range(len(lattice.faces)):
        middles: Counter[int] = Counter()
        for j in ups[i]:
            middles.update(ups[j])
        diamond_failures.extend(
            f"Interval {lattice.faces[i]} < {lattice.faces[k]} has {count} middle faces"
            for k, count in sorted(middles.items())
            if count != 2
        )

    report = SphereCheckReport(
        n=n,
        f_vector=f_vector,
        euler_characteristic=euler,
        expected_euler=1 + (-1) ** (n - 4),
        components=components,
        thin_faces=thin,
        diamond_failures=tuple(diamond_failures),
    )
    logger.info(
        "Sphere check n=%d: euler=%d components=%d passed=%s",
        n,
        euler,
        components,
        report.passed,
    )
    return report
