"""The Stasheff property suite.

Ten exact checks covering the finite associahedra, F-tessellations, the group
T^no and its action on the infinite associahedron. Each check returns a report
with a certificate (counts, examples, bounds) and the list of failures it
found; a seed fully determines every sampled check.

Example:
    >>> report = run_check(2, seed=0, max_n=5)
    >>> report.name, report.passed
    ('dimension-formula', True)
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from stasheff.core.associahedron import (
    PolygonTessellation,
    all_diagonals,
    catalan,
    check_sphere_boundary,
    enumerate_tessellations,
    face_dim,
    face_lattice,
    schroeder_hipparchus,
)
from stasheff.core.complexnav import (
    EIGHT_GON,
    WindowPolicy,
    bfs_distance,
    classify_link,
    isometry_consistency_check,
    minimal_cycle,
    neighbors,
    translation_length_upper,
)
from stasheff.core.dyadic import Dyadic, StandardPartition
from stasheff.core.exceptions import BudgetExceededError
from stasheff.core.ftess import (
    BASE,
    FTessellation,
    containing_triangulations,
    from_window_polygon,
    intersect,
    leq,
    nontriangular_components,
)
from stasheff.core.sampling import random_element, random_tessellation, random_triangulation
from stasheff.core.shape import LinkShape
from stasheff.core.thompson import (
    ThompsonElement,
    act_tessellation,
    compose,
    evaluate,
    faithfulness_witness,
    identity,
    inverse,
    reduce_minimal,
    reflection,
    rotation,
    sign,
    slope_map,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 0
GROUP_SAMPLES = 200
ACTION_SAMPLES = 200
RANDOM_PRODUCTS = 50
DISTANCE_SAMPLES = 100
ISOMETRY_SAMPLES = 50


@dataclass(frozen=True, slots=True)
class CheckReport:
    """Outcome of one property check.

    Attributes:
        number: Position of the check in the suite, from 1
        name: Short identifier
        certificate: JSON-compatible evidence for the outcome
        failures: Human-readable descriptions of every violation found
    """

    number: int
    name: str
    certificate: dict[str, Any] = field(default_factory=dict)
    failures: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "certificate": self.certificate,
            "failures": list(self.failures),
        }


@dataclass(frozen=True, slots=True)
class SuiteReport:
    """All checks of one run."""

    seed: int
    checks: tuple[CheckReport, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }

    def summary(self) -> list[str]:
        lines = [
            f"{check.number:2d}. {check.name:<24} {'ok' if check.passed else 'FAILED'}"
            for check in self.checks
        ]
        failed = sum(1 for check in self.checks if not check.passed)
        lines.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return lines


def generator_set() -> list[ThompsonElement]:
    """Rotations by 1/2 and 1/4, the slope map and the reflection."""
    return [rotation(Dyadic(1, 1)), rotation(Dyadic(1, 2)), slope_map(), reflection()]


def _random_word(rng: random.Random, length: int) -> ThompsonElement:
    generators = generator_set()
    result = identity()
    for _ in range(length):
        g = rng.choice(generators)
        result = compose(g, result if rng.random() < 0.5 else inverse(result))
    return result


def _brute_force_f_vector(n: int) -> tuple[int, ...]:
    # Independent of the backtracking enumerator: filter every subset of
    # diagonals of size at most n - 3 by a pairwise crossing test.
    def crossing(d: tuple[int, int], e: tuple[int, int]) -> bool:
        (a, b), (c, f) = d, e
        return (a < c < b < f) or (c < a < f < b)

    diagonals = all_diagonals(n)
    counts = [0] * (n - 2)
    for size in range(n - 2):
        for subset in itertools.combinations(diagonals, size):
            if not any(crossing(d, e) for d, e in itertools.combinations(subset, 2)):
                counts[n - 3 - size] += 1
    return tuple(counts)


def check_associahedron_counts(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    vectors = {}
    for n in range(3, max_n + 1):
        lattice = face_lattice(n)
        oracle = _brute_force_f_vector(n)
        vectors[str(n)] = list(lattice.f_vector)
        if lattice.f_vector != oracle:
            failures.append(f"n={n}: f-vector {lattice.f_vector}, oracle {oracle}")
        if lattice.f_vector[0] != catalan(n - 2):
            failures.append(f"n={n}: {lattice.f_vector[0]} vertices, Catalan {catalan(n - 2)}")
        if len(lattice.faces) != schroeder_hipparchus(n - 2):
            failures.append(
                f"n={n}: {len(lattice.faces)} faces, "
                f"Schroeder-Hipparchus {schroeder_hipparchus(n - 2)}"
            )
    if max_n >= 5 and face_lattice(5).f_vector != (5, 5, 1):
        failures.append("A(P_5) is not a pentagon")
    return CheckReport(1, "associahedron-counts", {"f_vectors": vectors}, tuple(failures))


def check_dimension_formula(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    checked = 0
    for n in range(3, max_n + 1):
        lattice = face_lattice(n)
        for j, face in enumerate(lattice.faces):
            checked += 1
            # A face of dimension d has facets of dimension d - 1 only.
            expected = n - 3 - len(face.diagonals)
            if face_dim(face) != expected:
                failures.append(f"{face}: dimension {face_dim(face)}, expected {expected}")
            for i in lattice.down(j):
                if face_dim(lattice.faces[i]) != expected - 1:
                    failures.append(f"{lattice.faces[i]} is not a facet of {face}")
    return CheckReport(2, "dimension-formula", {"faces_checked": checked}, tuple(failures))


def check_boundary_sphere(rng: random.Random, max_n: int) -> CheckReport:
    reports = [check_sphere_boundary(n) for n in range(4, max_n + 1)]
    failures = tuple(
        f"n={report.n}: {failure}" for report in reports for failure in report.failures
    )
    certificate = {
        str(report.n): {
            "euler_characteristic": report.euler_characteristic,
            "components": report.components,
        }
        for report in reports
    }
    return CheckReport(3, "boundary-sphere", certificate, failures)


def _rank_two_faces(window: StandardPartition) -> list[FTessellation]:
    size = len(window)
    return [
        from_window_polygon(t, window)
        for t in enumerate_tessellations(size)
        if t.dimension == 2
    ]


def _edges_through(b: FTessellation) -> tuple[FTessellation, FTessellation]:
    vertex = containing_triangulations(b)[0]
    first, second = sorted((b.removed - vertex.removed) | (vertex.added - b.added))
    return vertex.without_arc(first), vertex.without_arc(second)


def check_rank_two_cycles(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    lengths = {"4": 0, "5": 0}
    faces = _rank_two_faces(EIGHT_GON)
    for b in faces:
        sizes = sorted(len(region) for region in nontriangular_components(b))
        cycle = minimal_cycle(*_edges_through(b))
        expected = 4 if sizes == [4, 4] else 5 if sizes == [5] else None
        if expected is None or cycle.vertex_count != expected:
            failures.append(
                f"{b}: components {sizes}, minimal cycle length {cycle.vertex_count}"
            )
        lengths[str(cycle.vertex_count)] = lengths.get(str(cycle.vertex_count), 0) + 1
    certificate = {"window": str(EIGHT_GON), "faces": len(faces), "cycle_lengths": lengths}
    return CheckReport(4, "rank-two-cycles", certificate, tuple(failures))


RANK_THREE_EXAMPLES: tuple[tuple[str, tuple[tuple[int, int], ...], LinkShape], ...] = (
    ("three squares", ((1, 4), (5, 8)), LinkShape.CUBE),
    ("square and pentagon", ((1, 4), (1, 5)), LinkShape.PRISM),
    ("hexagon", ((1, 3), (3, 5)), LinkShape.ASSOCIAHEDRON),
)


def check_rank_three_links(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    certificate = {}
    for label, diagonals, shape in RANK_THREE_EXAMPLES:
        b = from_window_polygon(PolygonTessellation(8, diagonals), EIGHT_GON)
        link = classify_link(b)
        certificate[label] = {
            "center": b.to_dict(),
            "shape": link.shape.name,
            "vertex_count": link.vertex_count,
        }
        if link.shape != shape or link.vertex_count != shape.vertex_count:
            failures.append(
                f"{label}: {link.shape} with {link.vertex_count} vertices, "
                f"expected {shape} with {shape.vertex_count}"
            )
    return CheckReport(5, "rank-three-links", certificate, tuple(failures))


def check_group_laws(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    e = identity()
    for sample in range(GROUP_SAMPLES):
        a, b, c = (random_element(rng, max_intervals=5, max_level=4) for _ in range(3))
        if compose(compose(a, b), c) != compose(a, compose(b, c)):
            failures.append(f"sample {sample}: associativity fails for {a}, {b}, {c}")
        if compose(a, e) != a or compose(e, a) != a:
            failures.append(f"sample {sample}: identity law fails for {a}")
        if compose(a, inverse(a)) != e or compose(inverse(a), a) != e:
            failures.append(f"sample {sample}: inverse law fails for {a}")
        reduced = reduce_minimal(a)
        if reduce_minimal(reduced).pairs != reduced.pairs:
            failures.append(f"sample {sample}: reduce is not idempotent on {a}")
        if sign(compose(a, b)) != (sign(a) ^ sign(b)):
            failures.append(f"sample {sample}: sign is not multiplicative on {a}, {b}")
        ab = compose(a, b)
        for source, _ in b.pairs:
            x = source.left
            if evaluate(ab, x) != evaluate(a, evaluate(b, x)):
                failures.append(f"sample {sample}: composite disagrees at {x}")
        for t in (a, ab):
            try:
                ThompsonElement(t.pairs, t.orientation)
            except ValueError as error:
                failures.append(f"sample {sample}: image partition fails for {t}: {error}")
    certificate = {"samples": GROUP_SAMPLES}
    return CheckReport(6, "group-laws", certificate, tuple(failures))


def check_action(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    e = identity()
    for sample in range(ACTION_SAMPLES):
        t = random_element(rng, max_intervals=4, max_level=3)
        vertex = random_triangulation(rng, EIGHT_GON)
        a = random_tessellation(rng, EIGHT_GON, max_rank=2)
        edge = vertex.without_arc(
            rng.choice(sorted(vertex.arcs_within(EIGHT_GON) - EIGHT_GON.sides()))
        )
        meet = intersect(a, vertex)
        ta, tv = act_tessellation(t, a), act_tessellation(t, vertex)
        if ta.rank != a.rank or act_tessellation(t, meet).rank != meet.rank:
            failures.append(f"sample {sample}: rank changes under {t}")
        if act_tessellation(e, a) != a:
            failures.append(f"sample {sample}: identity moves {a}")
        if act_tessellation(t, meet) != intersect(ta, tv):
            failures.append(f"sample {sample}: intersection not equivariant under {t}")
        # vertex <= edge and a <= meet hold before acting, so they must after.
        if not leq(tv, act_tessellation(t, edge)):
            failures.append(f"sample {sample}: {t} breaks {vertex} <= {edge}")
        if not leq(ta, act_tessellation(t, meet)):
            failures.append(f"sample {sample}: {t} breaks {a} <= {meet}")
    half, quarter = rotation(Dyadic(1, 1)), rotation(Dyadic(1, 2))
    moved = act_tessellation(quarter, BASE)
    if act_tessellation(half, BASE) != BASE:
        failures.append("rotation by 1/2 moves A_F")
    if moved == BASE:
        failures.append("rotation by 1/4 fixes A_F")
    certificate = {"samples": ACTION_SAMPLES, "rotation_quarter_image": moved.to_dict()}
    return CheckReport(7, "action", certificate, tuple(failures))


def check_faithfulness(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    elements = generator_set()
    while len(elements) < 4 + RANDOM_PRODUCTS:
        word = _random_word(rng, rng.randint(2, 5))
        if word != identity():
            elements.append(word)
    witnesses = []
    for t in elements:
        try:
            witness = faithfulness_witness(t)
        except BudgetExceededError as error:
            failures.append(f"{t}: {error}")
            continue
        if witness is None or act_tessellation(t, witness) == witness:
            failures.append(f"no witness for {t}")
        else:
            witnesses.append({"element": t.to_dict(), "witness": witness.to_dict()})
    certificate = {"elements": len(elements), "witnesses": witnesses[:4]}
    return CheckReport(8, "faithfulness", certificate, tuple(failures))


def check_distances(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    policy = WindowPolicy(EIGHT_GON)

    def d(x: FTessellation, y: FTessellation) -> int:
        return bfs_distance(x, y, policy).bound

    for sample in range(DISTANCE_SAMPLES):
        a, b, c = (random_triangulation(rng, EIGHT_GON) for _ in range(3))
        _, flipped = rng.choice(neighbors(a, policy))
        if d(a, a) != 0:
            failures.append(f"sample {sample}: d(A, A) != 0 for {a}")
        if d(a, flipped) != 1:
            failures.append(f"sample {sample}: a flip of {a} is not at distance 1")
        ab, bc, ac = d(a, b), d(b, c), d(a, c)
        if ab != d(b, a):
            failures.append(f"sample {sample}: distance not symmetric for {a}, {b}")
        if ac > ab + bc:
            failures.append(f"sample {sample}: triangle inequality fails ({ac} > {ab}+{bc})")
    translations = {}
    for label, t in (("identity", identity()), ("rotation 1/2", rotation(Dyadic(1, 1)))):
        report = translation_length_upper(t, 1, policy)
        translations[label] = report.bound
        if report.bound != 0:
            failures.append(f"translation length of {label} bounded by {report.bound}")
    certificate = {"samples": DISTANCE_SAMPLES, "translation_lengths": translations}
    return CheckReport(9, "distances", certificate, tuple(failures))


def check_isometry(rng: random.Random, max_n: int) -> CheckReport:
    failures = []
    seed = rng.randrange(1 << 30)
    for t in generator_set():
        report = isometry_consistency_check(t, ISOMETRY_SAMPLES, seed=seed)
        failures.extend(f"{t}: {violation}" for violation in report.violations)
    certificate = {"samples": ISOMETRY_SAMPLES, "seed": seed, "elements": len(generator_set())}
    return CheckReport(10, "isometry", certificate, tuple(failures))


CHECKS: tuple[Callable[[random.Random, int], CheckReport], ...] = (
    check_associahedron_counts,
    check_dimension_formula,
    check_boundary_sphere,
    check_rank_two_cycles,
    check_rank_three_links,
    check_group_laws,
    check_action,
    check_faithfulness,
    check_distances,
    check_isometry,
)


def run_check(number: int, *, seed: int = DEFAULT_SEED, max_n: int = 8) -> CheckReport:
    """Run a single check by its position in the suite.

    Each check draws from its own generator seeded by (seed, number), so a
    check gives the same result alone or inside the full suite.

    Raises:
        ValueError: If number is not between 1 and the number of checks
    """
    if not 1 <= number <= len(CHECKS):
        raise ValueError(f"Unknown check {number}; expected 1..{len(CHECKS)}")
    rng = random.Random(seed * len(CHECKS) + number)
    report = CHECKS[number - 1](rng, max_n)
    logger.info("Check %d %s: %s", number, report.name, "ok" if report.passed else "FAILED")
    for failure in report.failures:
        logger.debug("Check %d: %s", number, failure)
    return report


def verify_all(*, seed: int = DEFAULT_SEED, max_n: int = 8) -> SuiteReport:
    """Run every check of the suite."""
    return SuiteReport(
        seed=seed,
        checks=tuple(
            run_check(number, seed=seed, max_n=max_n)
            for number in range(1, len(CHECKS) + 1)
        ),
    )
