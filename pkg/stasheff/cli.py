"""Command-line interface for Stasheff.

Usage:
    stasheff associahedron fvector 5
    stasheff tessellation rank '{"removed": ["[0,1/2]"]}'
    stasheff group eval "rot 1/2" 1/4
    stasheff complex link @cell.json --format dot
    stasheff verify-all --seed 0

Tessellations are read as inline JSON ``{"removed": [...], "added": [...]}``,
as ``@path`` to a JSON file, or as ``A_F`` for the base triangulation.
Elements are read the same way or as generator shorthands ("rot 1/4 * refl").

Exit status: 0 success, 1 failed check or invalid tessellation, 2 usage or
input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from stasheff import __version__
from stasheff.core.associahedron import (
    check_sphere_boundary,
    face_lattice,
    flip_graph,
)
from stasheff.core.complexnav import (
    EIGHT_GON,
    CellLink,
    WindowPolicy,
    bfs_distance,
    classify_link,
    isometry_consistency_check,
    minimal_cycle,
    neighbors,
    translation_length_upper,
)
from stasheff.core.dyadic import Dyadic, StandardPartition
from stasheff.core.exceptions import (
    BudgetExceededError,
    InvalidTessellationError,
    ParseError,
    StasheffError,
)
from stasheff.core.ftess import (
    BASE,
    FTessellation,
    cell_of,
    intersect,
    nontriangular_components,
    support_polygon,
)
from stasheff.core.thompson import (
    ThompsonElement,
    act_tessellation,
    compose,
    evaluate,
    faithfulness_witness,
    inverse,
    parse_element,
    reduce_minimal,
    sign,
)
from stasheff.core.types import (
    DEFAULT_MAX_EXPANSIONS,
    DEFAULT_MAX_STATES,
    MAX_POLYGON_SIZE,
    FormatCode,
)
from stasheff.formats import Document, Graph, get_format
from stasheff.verify import DEFAULT_SEED, verify_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

Outcome = tuple[Document, int]


class UsageError(StasheffError):
    """Arguments that parse but make no sense together."""


@dataclass(frozen=True, slots=True)
class CommandConfig:
    """Everything one invocation needs, resolved from the command line.

    Attributes:
        command: Subcommand group ("associahedron", "group", ...)
        action: Action within the group, empty for verify-all
        inputs: Positional operands, still in textual form
        format: Output format code
        seed: Seed for every sampled computation
        window: Explicit search window, or None to derive one from the inputs
        max_n: Largest polygon the associahedron commands accept
        max_expansions: Window subdivisions a search may perform
        max_states: State budget of one search
        radius: Flip radius for translation-length searches
        samples: Sample count for isometry checks
        verbosity: 0 warnings, 1 info, 2 debug
    """

    command: str
    action: str = ""
    inputs: tuple[str, ...] = ()
    format: FormatCode = "json"
    seed: int = DEFAULT_SEED
    window: StandardPartition | None = None
    max_n: int = MAX_POLYGON_SIZE
    max_expansions: int = DEFAULT_MAX_EXPANSIONS
    max_states: int = DEFAULT_MAX_STATES
    radius: int = 1
    samples: int = 50
    verbosity: int = 0

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> CommandConfig:
        window = StandardPartition.parse(args.window) if args.window else None
        return cls(
            command=args.command,
            action=getattr(args, "action", "") or "",
            inputs=tuple(getattr(args, "inputs", ())),
            format=args.format,
            seed=args.seed,
            window=window,
            max_n=args.max_n,
            max_expansions=args.max_expansions,
            max_states=args.max_states,
            radius=args.radius,
            samples=args.samples,
            verbosity=args.verbose,
        )

    def policy(self, *tessellations: FTessellation) -> WindowPolicy:
        """The search policy: the explicit window, else the joint support."""
        if self.window is not None:
            return WindowPolicy(
                self.window, max_expansions=self.max_expansions, max_states=self.max_states
            )
        return WindowPolicy.covering(
            *tessellations, max_expansions=self.max_expansions, max_states=self.max_states
        )


def _read_text(text: str) -> str:
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Cannot read {text[1:]}: {e.strerror}") from e
    return text


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(
            f"Invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        ) from e


def read_tessellation(text: str) -> FTessellation:
    """Read a tessellation operand: JSON, @path or A_F.

    Raises:
        ParseError: If the operand is not a tessellation document
        InvalidTessellationError: If the arcs do not form an F-tessellation

    Examples:
        >>> read_tessellation("{}") == BASE
        True
        >>> read_tessellation('{"removed": ["[0,1/2]"]}').rank
        1
    """
    source = _read_text(text).strip()
    if source in ("A_F", "base"):
        return BASE
    return FTessellation.from_dict(_load_json(source))


def read_element(text: str) -> ThompsonElement:
    """Read an element operand: JSON, @path or generator shorthand."""
    return parse_element(_read_text(text))


def _expect(config: CommandConfig, count: int) -> tuple[str, ...]:
    if len(config.inputs) != count:
        raise UsageError(
            f"{config.command} {config.action} takes {count} operand(s), "
            f"got {len(config.inputs)}"
        )
    return config.inputs


def _tessellation_graph(name: str, vertices: Sequence[FTessellation], edges: Any) -> Graph:
    return Graph(
        name=name,
        nodes=tuple((f"v{k}", str(vertex)) for k, vertex in enumerate(vertices)),
        edges=tuple((f"v{i}", f"v{j}", "") for i, j in edges),
    )


# associahedron


def cmd_associahedron(config: CommandConfig) -> Outcome:
    (raw,) = _expect(config, 1)
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"Polygon size must be an integer, got {raw!r}") from None
    if not 3 <= n <= config.max_n:
        raise UsageError(f"Polygon size must be between 3 and {config.max_n}, got {n}")

    if config.action == "fvector":
        f_vector = face_lattice(n).f_vector
        return Document(
            {"n": n, "f_vector": list(f_vector)},
            summary=(" ".join(str(count) for count in f_vector),),
        ), EXIT_OK
    if config.action == "lattice":
        lattice = face_lattice(n)
        graph = Graph(
            name=f"A(P_{n})",
            nodes=tuple((f"f{i}", str(face)) for i, face in enumerate(lattice.faces)),
            edges=tuple((f"f{i}", f"f{j}", "") for i, j in lattice.covers),
        )
        return Document(lattice.to_dict(), graph=graph), EXIT_OK
    if config.action == "flipgraph":
        adjacency = flip_graph(n)
        vertices = sorted(adjacency)
        index = {t: k for k, t in enumerate(vertices)}
        edges = sorted(
            (index[t], index[u]) for t in vertices for u in adjacency[t] if index[t] < index[u]
        )
        data = {
            "n": n,
            "vertices": [t.to_dict() for t in vertices],
            "edges": [list(edge) for edge in edges],
        }
        return Document(
            data,
            summary=(f"{len(vertices)} triangulations, {len(edges)} flips",),
            graph=_polygon_graph(f"flips of P_{n}", [str(t) for t in vertices], edges),
        ), EXIT_OK
    report = check_sphere_boundary(n, bound=config.max_n)
    summary = [
        f"n={n} f-vector {' '.join(map(str, report.f_vector))} "
        f"euler {report.euler_characteristic} (expected {report.expected_euler})",
        "passed" if report.passed else "FAILED",
        *report.failures,
    ]
    return Document(report.to_dict(), summary=tuple(summary)), (
        EXIT_OK if report.passed else EXIT_CHECK_FAILED
    )


def _polygon_graph(name: str, labels: list[str], edges: list[tuple[int, int]]) -> Graph:
    return Graph(
        name=name,
        nodes=tuple((f"t{k}", label) for k, label in enumerate(labels)),
        edges=tuple((f"t{i}", f"t{j}", "") for i, j in edges),
    )


# tessellation


def cmd_tessellation(config: CommandConfig) -> Outcome:
    if config.action == "intersect":
        first, second = (read_tessellation(text) for text in _expect(config, 2))
        meet = intersect(first, second)
        return Document(meet.to_dict(), summary=(str(meet),)), EXIT_OK

    (raw,) = _expect(config, 1)
    if config.action == "validate":
        try:
            b = read_tessellation(raw)
        except InvalidTessellationError as e:
            data = {
                "valid": False,
                "violations": [violation.to_dict() for violation in e.violations],
            }
            summary = ("invalid", *(str(violation) for violation in e.violations))
            return Document(data, summary=summary), EXIT_CHECK_FAILED
        data = {"valid": True, "rank": b.rank, "tessellation": b.to_dict()}
        return Document(data, summary=(f"valid, rank {b.rank}",)), EXIT_OK

    b = read_tessellation(raw)
    if config.action == "rank":
        return Document({"rank": b.rank}, summary=(str(b.rank),)), EXIT_OK
    if config.action == "components":
        regions = nontriangular_components(b)
        data = {
            "support": str(support_polygon(b)),
            "components": [[str(point) for point in region] for region in regions],
        }
        summary = tuple(
            f"{len(region)}-gon: " + " ".join(str(point) for point in region)
            for region in regions
        )
        return Document(data, summary=summary or ("no components",)), EXIT_OK
    cell = cell_of(b)
    return Document(
        cell.to_dict(),
        summary=(f"dimension {cell.dimension}, factors {list(cell.factor_sizes)}",),
    ), EXIT_OK


# group


def cmd_group(config: CommandConfig) -> Outcome:
    action = config.action
    if action == "compose":
        s, t = (read_element(text) for text in _expect(config, 2))
        return _element_document(compose(s, t)), EXIT_OK
    if action == "eval":
        raw_t, raw_x = _expect(config, 2)
        x = Dyadic.parse(raw_x)
        y = evaluate(read_element(raw_t), x)
        return Document({"x": str(x), "value": str(y)}, summary=(str(y),)), EXIT_OK
    if action == "act":
        raw_t, raw_b = _expect(config, 2)
        image = act_tessellation(read_element(raw_t), read_tessellation(raw_b))
        return Document(image.to_dict(), summary=(str(image),)), EXIT_OK

    (raw,) = _expect(config, 1)
    t = read_element(raw)
    if action == "inverse":
        return _element_document(inverse(t)), EXIT_OK
    if action == "reduce":
        return _element_document(reduce_minimal(t)), EXIT_OK
    if action == "sign":
        value = int(sign(t))
        return Document({"sign": value}, summary=(str(value),)), EXIT_OK
    witness = faithfulness_witness(t)
    if witness is None:
        return Document(
            {"identity": True, "witness": None}, summary=("identity: no witness",)
        ), EXIT_OK
    image = act_tessellation(t, witness)
    data = {"identity": False, "witness": witness.to_dict(), "image": image.to_dict()}
    return Document(data, summary=(f"{witness} -> {image}",)), EXIT_OK


def _element_document(t: ThompsonElement) -> Document:
    return Document(t.to_dict(), summary=(str(t),))


# complex


def _link_document(link: CellLink) -> Document:
    summary = (
        f"{link.shape} with {link.vertex_count} vertices",
        *(str(vertex) for vertex in link.vertices),
    )
    graph = _tessellation_graph(str(link.shape), link.vertices, link.edges)
    return Document(link.to_dict(), summary=summary, graph=graph)


def cmd_complex(config: CommandConfig) -> Outcome:
    action = config.action
    if action == "neighbors":
        (raw,) = _expect(config, 1)
        a = read_tessellation(raw)
        policy = config.policy(a)
        found = neighbors(a, policy)
        data = {
            "vertex": a.to_dict(),
            "window": str(policy.base),
            "neighbors": [{"arc": str(arc), "vertex": b.to_dict()} for arc, b in found],
        }
        graph = Graph(
            name="neighbors",
            nodes=(("v", str(a)), *((f"n{k}", str(b)) for k, (_, b) in enumerate(found))),
            edges=tuple(("v", f"n{k}", str(arc)) for k, (arc, _) in enumerate(found)),
        )
        summary = tuple(f"{arc}: {b}" for arc, b in found)
        return Document(data, summary=summary, graph=graph), EXIT_OK
    if action == "distance":
        a, b = (read_tessellation(text) for text in _expect(config, 2))
        report = bfs_distance(a, b, config.policy(a, b))
        path_edges = [(k, k + 1) for k in range(len(report.path) - 1)]
        return Document(
            report.to_dict(),
            summary=(f"distance <= {report.bound} in window {report.window}",),
            graph=_tessellation_graph("flip path", report.path, path_edges),
        ), EXIT_OK
    if action == "cycle":
        e1, e2 = (read_tessellation(text) for text in _expect(config, 2))
        return _link_document(minimal_cycle(e1, e2)), EXIT_OK
    if action == "link":
        (raw,) = _expect(config, 1)
        return _link_document(classify_link(read_tessellation(raw))), EXIT_OK

    (raw,) = _expect(config, 1)
    t = read_element(raw)
    if action == "translation":
        policy = WindowPolicy(
            config.window or EIGHT_GON,
            max_expansions=config.max_expansions,
            max_states=config.max_states,
        )
        translation = translation_length_upper(t, config.radius, policy)
        return Document(
            translation.to_dict(),
            summary=(f"translation length <= {translation.bound}",),
        ), EXIT_OK
    report = isometry_consistency_check(
        t, config.samples, seed=config.seed, window=config.window or EIGHT_GON
    )
    summary = ("passed" if report.passed else "FAILED", *report.violations)
    return Document(report.to_dict(), summary=summary), (
        EXIT_OK if report.passed else EXIT_CHECK_FAILED
    )


def cmd_verify_all(config: CommandConfig) -> Outcome:
    report = verify_all(seed=config.seed, max_n=min(config.max_n, 8))
    return Document(report.to_dict(), summary=tuple(report.summary())), (
        EXIT_OK if report.passed else EXIT_CHECK_FAILED
    )


COMMANDS: dict[str, Callable[[CommandConfig], Outcome]] = {
    "associahedron": cmd_associahedron,
    "tessellation": cmd_tessellation,
    "group": cmd_group,
    "complex": cmd_complex,
    "verify-all": cmd_verify_all,
}

ACTIONS: dict[str, tuple[str, ...]] = {
    "associahedron": ("fvector", "lattice", "flipgraph", "sphere-check"),
    "tessellation": ("validate", "rank", "components", "cell", "intersect"),
    "group": ("compose", "inverse", "reduce", "sign", "eval", "act", "witness"),
    "complex": ("neighbors", "distance", "cycle", "link", "translation", "isometry-check"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "dot", "text"), default="json", help="output format"
    )
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    common.add_argument(
        "--window", help="search window as comma-separated breakpoints, e.g. 0,1/4,1/2,3/4"
    )
    common.add_argument(
        "--max-n", type=int, default=MAX_POLYGON_SIZE, help="largest polygon size"
    )
    common.add_argument(
        "--max-expansions",
        type=int,
        default=DEFAULT_MAX_EXPANSIONS,
        help="window subdivisions a search may perform",
    )
    common.add_argument(
        "--max-states", type=int, default=DEFAULT_MAX_STATES, help="state budget per search"
    )
    common.add_argument(
        "--radius", type=int, default=1, help="flip radius for translation searches"
    )
    common.add_argument(
        "--samples", type=int, default=50, help="sample count for isometry checks"
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug"
    )

    parser = argparse.ArgumentParser(
        prog="stasheff",
        description="Exact computations in the infinite associahedron and Thompson's group T.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    for command, actions in ACTIONS.items():
        sub = commands.add_parser(command, parents=[common], help=f"{command} operations")
        sub.add_argument("action", choices=actions)
        sub.add_argument("inputs", nargs="*", help="operands (JSON, @path or shorthand)")
    commands.add_parser(
        "verify-all", parents=[common], help="run the full property suite"
    )
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def run(config: CommandConfig) -> Outcome:
    """Execute a resolved command and return its document and exit status."""
    return COMMANDS[config.command](config)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = CommandConfig.from_namespace(args)
        document, status = run(config)
        output = get_format(config.format).render(document)
    except BudgetExceededError as e:
        print(f"stasheff: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidTessellationError as e:
        print(f"stasheff: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (StasheffError, ValueError) as e:
        print(f"stasheff: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(output)
    logger.debug("Exit status %d", status)
    return status


if __name__ == "__main__":
    sys.exit(main())
