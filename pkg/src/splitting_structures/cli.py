"""
Command-line interface.

    splitting-structures analyze fixtures/path7.json
    splitting-structures verify fixtures/star.json --suite lemmas --seed 42 --samples 200
    splitting-structures gen cycle --n 24 --radii 1,2 --out fixtures/cycle24.json

Every command prints a JSON report (or writes it to --out). Exit codes:
0 success, 1 violations or a negative result, 2 input or usage errors.
"""
import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from splitting_structures.atlas import (
    NotCyclic,
    build_atlas,
    circular_order,
    unpierced_points,
)
from splitting_structures.bounds import DEFAULT_FAMILY_CAP
from splitting_structures.dot import export_dot
from splitting_structures.errors import AnalysisFailure, GroundDisconnected, InputError
from splitting_structures.generators import (
    BetweennessRelation,
    SpaceKind,
    from_betweenness,
    gen_standard,
    restricted_interval_structure,
)
from splitting_structures.order import (
    Decomposition,
    chart_component,
    check_order_topology,
    check_subinterval_law,
    decompose,
    order_chart,
)
from splitting_structures.schema import dump_document, load_betweenness_file, load_space_file
from splitting_structures.space import Space, check_members, is_connected, max_basis_boundary, space_from_document
from splitting_structures.splitting import non_flat_set
from splitting_structures.suites import DEFAULT_PAIR_CAP, DEFAULT_SAMPLES, DEFAULT_SEED, SUITE_NAMES, run_suite
from splitting_structures.tables import split_histogram, split_table

GEN_KINDS = [k.value for k in SpaceKind] + ["restricted"]


@dataclass
class Report:
    command: str
    argv: list[str]
    space: dict[str, int] | None = None
    payload: dict[str, Any] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)
    status: int = 0

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "argv": self.argv,
            "space": self.space,
            "payload": self.payload,
            "violations": self.violations,
            "status": self.status,
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"


class _Parser(argparse.ArgumentParser):
    """Raises instead of exiting so execute() can report usage errors."""

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def summarize(S: Space) -> dict[str, int]:
    return {"n": S.n, "edges": S.edge_count, "basis_size": len(S.basis), "K": max_basis_boundary(S)}


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Write the report (for gen: the fixture) to this file")
    common.add_argument("--dot", type=Path, help="Also write a DOT rendering of the space to this file")

    parser = _Parser(prog="splitting-structures", description="Splitting, order and atlas analysis of finite 1-dimensional spaces")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in [
        ("analyze", "Split profiles, locally flat points and K"),
        ("decompose", "Remove non-flat points and chart the components"),
        ("atlas", "Cover the space by local order charts"),
        ("cyclic", "Stitch the atlas into a cyclic order"),
    ]:
        command = commands.add_parser(name, parents=[common], help=help_text)
        command.add_argument("file", type=Path)

    order = commands.add_parser("order", parents=[common], help="Order chart on a connected domain")
    order.add_argument("file", type=Path)
    order.add_argument("--domain", default="all", help="'all' or comma-separated point ids")
    order.add_argument("--anchor", type=int, help="Anchor point (default: smallest splitting point)")

    verify = commands.add_parser("verify", parents=[common], help="Run a verification suite")
    verify.add_argument("file", type=Path)
    verify.add_argument("--suite", choices=SUITE_NAMES, default="lemmas")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    verify.add_argument("--cap", type=int, default=DEFAULT_FAMILY_CAP, help="Family enumeration cap")
    verify.add_argument("--pair-cap", type=int, default=DEFAULT_PAIR_CAP)

    betweenness = commands.add_parser("betweenness", parents=[common], help="Recover a total order from betweenness triples")
    betweenness.add_argument("file", type=Path)

    gen = commands.add_parser("gen", parents=[common], help="Generate a fixture file")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--n", type=int, default=7)
    gen.add_argument("--arms", type=int, default=3)
    gen.add_argument("--len", dest="length", type=int, default=4)
    gen.add_argument("--window", type=int, default=3)
    gen.add_argument("--radii", type=_int_list, default=[1])
    gen.add_argument("--seed", type=int, default=0)
    return parser


def _load_space(args: argparse.Namespace) -> Space:
    return space_from_document(load_space_file(args.file))


def _laws(*reports) -> tuple[list[dict], list[dict]]:
    return [r.to_dict() for r in reports], [{"law": r.law, **v} for r in reports for v in r.violations]


def _analyze(args, report: Report):
    S = _load_space(args)
    report.space = summarize(S)
    table = split_table(S)
    removed = non_flat_set(S, S.vertices)
    report.payload = {
        "splits": json.loads(table.to_json(orient="records")),
        "split_histogram": split_histogram(table),
        "non_flat": sorted(removed),
        "K": max_basis_boundary(S),
    }
    return S, Decomposition(removed=removed, components=())


def _decompose(args, report: Report):
    S = _load_space(args)
    report.space = summarize(S)
    decomposition = decompose(S, S.vertices)
    laws, report.violations = _laws(*decomposition.reports)
    report.payload = {
        "removed": sorted(decomposition.removed),
        "components": [chart.to_dict() for chart in decomposition.components],
        "laws": laws,
    }
    return S, decomposition


def _order(args, report: Report):
    S = _load_space(args)
    report.space = summarize(S)
    if args.domain == "all":
        domain = S.vertices
    else:
        try:
            domain = check_members(S, _int_list(args.domain))
        except argparse.ArgumentTypeError as e:
            raise InputError(str(e)) from None
    if not domain:
        raise InputError("--domain names no points")
    if not is_connected(S, domain):
        raise GroundDisconnected(f"domain {sorted(domain)} is not connected")
    chart = order_chart(S, domain, args.anchor) if args.anchor is not None else chart_component(S, domain)
    laws, report.violations = _laws(check_subinterval_law(S, chart), check_order_topology(S, chart))
    report.payload = {"chart": chart.to_dict(), "laws": laws}
    return S, None


def _atlas(args, report: Report):
    S = _load_space(args)
    report.space = summarize(S)
    atlas = build_atlas(S, S.vertices)
    report.payload = {
        "charts": [chart.to_dict() for chart in atlas.charts],
        "uncovered": sorted(atlas.uncovered),
        "unpierced": sorted(unpierced_points(S)),
    }
    return S, atlas


def _cyclic(args, report: Report):
    S, atlas = _atlas(args, report)
    result = circular_order(S, atlas)
    if isinstance(result, NotCyclic):
        report.violations = [{"result": "not_cyclic", "reason": result.reason}]
        report.payload["cycle"] = None
    else:
        report.payload["cycle"] = list(result.cycle)
    return S, atlas


def _verify(args, report: Report):
    S = _load_space(args)
    report.space = summarize(S)
    suite = run_suite(S, args.suite, seed=args.seed, samples=args.samples, cap=args.cap, pair_cap=args.pair_cap)
    report.payload = suite.to_dict()
    report.violations = suite.violations
    return S, None


def _betweenness(args, report: Report):
    rel = BetweennessRelation.from_document(load_betweenness_file(args.file))
    S, chart = from_betweenness(rel)
    report.space = summarize(S)
    report.payload = {"order": list(chart.sequence), "anchor": chart.anchor}
    return S, None


def _gen(args, report: Report):
    if args.kind == "restricted":
        S = restricted_interval_structure(args.n, args.window)
    else:
        S = gen_standard(args.kind, n=args.n, arms=args.arms, length=args.length, seed=args.seed, radii=args.radii)
    report.space = summarize(S)
    document = dump_document(S.to_document())
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(document, encoding="utf-8")
    report.payload = {"fixture": json.loads(document)}
    return S, None


HANDLERS = {
    "analyze": _analyze,
    "decompose": _decompose,
    "order": _order,
    "atlas": _atlas,
    "cyclic": _cyclic,
    "verify": _verify,
    "betweenness": _betweenness,
    "gen": _gen,
}


def _emit(report: Report, out: Path | None) -> None:
    text = report.to_json()
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")


def execute(argv: list[str]) -> tuple[Report, int]:
    """Run one command and emit its report; returns the report and the exit code."""
    argv = list(argv)
    report = Report(command=argv[0] if argv else "", argv=argv)
    try:
        args = build_parser().parse_args(argv)
        S, annotations = HANDLERS[args.command](args, report)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        report.violations = [{"error": type(e).__name__, "message": str(e)}]
        report.status = 2
        return report, 2
    except AnalysisFailure as e:
        report.violations = [{"error": type(e).__name__, "message": str(e)}]
        S, annotations = None, None

    report.status = 1 if report.violations else 0
    # gen writes its fixture to --out, so its report always goes to stdout
    _emit(report, None if args.command == "gen" else args.out)
    if args.dot is not None and S is not None:
        args.dot.parent.mkdir(parents=True, exist_ok=True)
        args.dot.write_text(export_dot(S, annotations), encoding="utf-8")
    return report, report.status


def main() -> None:
    sys.exit(execute(sys.argv[1:])[1])


if __name__ == "__main__":
    main()
