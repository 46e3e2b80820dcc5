"""
Verification suites.

Each suite runs a group of checks against one space and collects their
LawReports; a violation means the implementation disagrees with a result
that holds in the model.
"""
import itertools
import random

from dagster import get_dagster_logger
from networkx.utils import UnionFind

from splitting_structures.atlas import build_atlas
from splitting_structures.bounds import (
    DEFAULT_FAMILY_CAP,
    Family,
    component_bound_check,
    family_component_bound,
    family_size,
)
from splitting_structures.errors import (
    AnalysisFailure,
    BadParams,
    FamilyTooLarge,
    GroundDisconnected,
    LemmaViolated,
)
from splitting_structures.order import (
    OrderChart,
    boundary_pair_check,
    decompose,
    interval,
    order_chart,
    same_up_to_reversal,
    splitting_anchor,
)
from splitting_structures.reports import LawReport, SuiteReport
from splitting_structures.space import (
    Partition,
    Space,
    VertexSet,
    boundary,
    boundary_classes,
    canonical_decomposition,
    components,
    grow_connected,
    is_connected,
)
from splitting_structures.splitting import (
    FlatWitness,
    is_locally_flat,
    separation_region,
    sim_classes,
    split_count,
    verify_three_part_split,
)

log = get_dagster_logger(__name__)

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 200
DEFAULT_PAIR_CAP = 500
SUITE_NAMES = ("lemmas", "bounds", "order")
SUITE_FAMILIES = ("basis", "complements", "intervals", "symmetric_differences", "boolean:2")


def union_find_classes(S: Space, ground: VertexSet, x: int) -> Partition:
    """Classes of ground minus x by union-find over the induced edges."""
    rest = ground - {x}
    uf = UnionFind(sorted(rest))
    for u, v in S.graph.edges:
        if u in rest and v in rest:
            uf.union(u, v)
    return Partition(tuple(sorted((frozenset(s) for s in uf.to_sets()), key=min)))


def _capped_pairs(points: list[int], cap: int, rng: random.Random) -> list[tuple[int, int]]:
    pairs = list(itertools.combinations(points, 2))
    if len(pairs) > cap:
        pairs = sorted(rng.sample(pairs, cap))
    return pairs


def check_separation_oracle(S: Space) -> LawReport:
    ground = S.vertices
    violations = []
    for x in sorted(ground):
        got = sim_classes(S, ground, x).classes.blocks
        want = union_find_classes(S, ground, x).blocks
        if got != want:
            violations.append({"point": x, "classes": [sorted(b) for b in got], "oracle": [sorted(b) for b in want]})
    return LawReport(law="separation_oracle", checked=len(ground), violations=tuple(violations))


def check_three_part_splits(S: Space, pair_cap: int, rng: random.Random) -> LawReport:
    ground = S.vertices
    splitting = [x for x in sorted(ground) if split_count(S, ground, x) >= 2]
    pairs = _capped_pairs(splitting, pair_cap, rng)
    violations = []
    for a, b in pairs:
        try:
            verify_three_part_split(S, ground, a, b)
        except LemmaViolated as e:
            violations.append({"a": a, "b": b, "error": str(e)})
    return LawReport(law="three_part_split", checked=len(pairs), violations=tuple(violations))


def check_flat_two_components(S: Space) -> LawReport:
    ground = S.vertices
    flat = [x for x in sorted(ground) if isinstance(is_locally_flat(S, ground, x), FlatWitness)]
    violations = []
    for x in flat:
        count = split_count(S, ground, x)
        if count != 2:
            violations.append({"point": x, "split_count": count})
    return LawReport(law="flat_two_components", checked=len(flat), violations=tuple(violations))


def check_connected_same_boundary(S: Space, samples: int, rng: random.Random) -> LawReport:
    """Distinct connected U, V with bd(U) outside V and bd(V) outside U are disjoint."""
    violations = []
    checked = 0
    for _ in range(samples):
        U = grow_connected(S, S.vertices, rng)
        V = grow_connected(S, S.vertices, rng)
        if U == V or boundary(S, U) & V or boundary(S, V) & U:
            continue
        checked += 1
        if U & V:
            violations.append({"U": sorted(U), "V": sorted(V)})
    return LawReport(law="connected_same_boundary", checked=checked, violations=tuple(violations))


def check_canonical_decompositions(S: Space, samples: int, rng: random.Random) -> LawReport:
    points = sorted(S.vertices)
    violations = []
    for _ in range(samples):
        X = frozenset(v for v in points if rng.random() < 0.5)
        parts = canonical_decomposition(S, X)
        union = frozenset().union(*parts.open_parts) | parts.residue
        if union != X:
            violations.append({"set": sorted(X), "error": "parts and residue do not cover the set"})
            continue
        for part in parts.open_parts:
            if not is_connected(S, part) or not boundary(S, part) <= parts.residue:
                violations.append({"set": sorted(X), "part": sorted(part)})
    return LawReport(law="canonical_decomposition", checked=samples, violations=tuple(violations))


def check_boundary_classes(S: Space) -> LawReport:
    try:
        classes = boundary_classes(S)
    except LemmaViolated as e:
        return LawReport(law="boundary_classes", checked=1, violations=({"error": str(e)},))
    return LawReport(law="boundary_classes", checked=len(classes))


def check_separation_contiguity(S: Space, charts: tuple[OrderChart, ...], pair_cap: int, rng: random.Random) -> LawReport:
    violations = []
    checked = 0
    for chart in charts:
        for a, b in _capped_pairs(sorted(chart.domain), pair_cap, rng):
            region = separation_region(S, chart.domain, a, b)
            checked += 1
            if region and not is_connected(S, region):
                violations.append({"a": a, "b": b, "region": sorted(region)})
    return LawReport(law="separation_contiguity", checked=checked, violations=tuple(violations))


def lemmas_suite(S: Space, seed: int, samples: int, pair_cap: int) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport(suite="lemmas")
    report.add(check_separation_oracle(S))
    report.add(check_three_part_splits(S, pair_cap, rng))
    report.add(check_flat_two_components(S))
    report.add(check_connected_same_boundary(S, samples, rng))
    report.add(check_canonical_decompositions(S, samples, rng))
    report.add(check_boundary_classes(S))
    try:
        charts = decompose(S, S.vertices).components
    except AnalysisFailure as e:
        report.add(LawReport(law="separation_contiguity", checked=0, violations=({"error": str(e)},)))
    else:
        report.add(check_separation_contiguity(S, charts, pair_cap, rng))
    return report


def bounds_suite(S: Space, seed: int, samples: int, cap: int) -> SuiteReport:
    rng = random.Random(seed)
    points = sorted(S.vertices)
    report = SuiteReport(suite="bounds")

    subsets = [frozenset(v for v in points if rng.random() < 0.5) for _ in range(samples)]
    subsets += [grow_connected(S, S.vertices, rng) for _ in range(samples)]
    bound = component_bound_check(S, subsets)
    report.add(LawReport(law="component_bound", checked=len(subsets), violations=tuple(bound.violations)))

    for text in SUITE_FAMILIES:
        family = Family.parse(text)
        try:
            result = family_component_bound(S, family, cap=cap)
        except FamilyTooLarge as e:
            log.warning(f"skipping family {family.label}: {e}")
            continue
        report.add(LawReport(
            law=f"family_bound[{family.label}]",
            checked=family_size(S, family),
            violations=tuple(result.violations),
        ))
    return report


def _check_anchor_robustness(S: Space, chart: OrderChart) -> list[dict]:
    violations = []
    for a in sorted(chart.domain):
        if a == chart.anchor or len(components(S, chart.domain, {a})) != 2:
            continue
        other = order_chart(S, chart.domain, a)
        if not same_up_to_reversal(other.sequence, chart.sequence):
            violations.append({"anchor": a, "sequence": list(other.sequence), "expected": list(chart.sequence)})
    return violations


def _check_three_part_coherence(S: Space, chart: OrderChart, pair_cap: int, rng: random.Random) -> tuple[int, list[dict]]:
    inner = list(chart.sequence[1:-1])
    pairs = _capped_pairs(inner, pair_cap, rng)
    violations = []
    for x, y in pairs:
        if chart.less(y, x):
            x, y = y, x
        middle = verify_three_part_split(S, chart.domain, x, y).middle
        forward = interval(S, chart.domain, x, y).members
        backward = interval(S, chart.domain, y, x).members
        if not middle == forward == backward:
            violations.append({"x": x, "y": y, "middle": sorted(middle), "interval": sorted(forward)})
    return len(pairs), violations


def order_suite(S: Space, seed: int, samples: int, pair_cap: int) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport(suite="order")
    try:
        decomposition = decompose(S, S.vertices)
    except AnalysisFailure as e:
        report.add(LawReport(law="decompose", checked=1, violations=({"error": str(e)},)))
        return report
    for law_report in decomposition.reports:
        report.add(law_report)

    anchors, coherence, pairs = [], [], 0
    for chart in decomposition.components:
        if len(chart.domain) < 3 or splitting_anchor(S, chart.domain) is None:
            continue
        anchors += _check_anchor_robustness(S, chart)
        checked, found = _check_three_part_coherence(S, chart, pair_cap, rng)
        pairs += checked
        coherence += found
        report.add(boundary_pair_check(S, chart.domain, samples=samples, seed=rng.randrange(2**32)))
    report.add(LawReport(law="anchor_robustness", checked=len(decomposition.components), violations=tuple(anchors)))
    report.add(LawReport(law="three_part_coherence", checked=pairs, violations=tuple(coherence)))

    try:
        build_atlas(S, S.vertices)
    except AnalysisFailure as e:
        report.add(LawReport(law="atlas_overlap", checked=1, violations=({"error": str(e)},)))
    else:
        report.add(LawReport(law="atlas_overlap", checked=1))
    return report


def run_suite(
    S: Space,
    suite: str,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
    cap: int = DEFAULT_FAMILY_CAP,
    pair_cap: int = DEFAULT_PAIR_CAP,
) -> SuiteReport:
    """Run one named suite; all randomness comes from `seed`."""
    if samples < 0:
        raise BadParams(f"samples must be non-negative, got {samples}")
    if not is_connected(S, S.vertices):
        raise GroundDisconnected("suites run on connected spaces")
    match suite:
        case "lemmas":
            report = lemmas_suite(S, seed, samples, pair_cap)
        case "bounds":
            report = bounds_suite(S, seed, samples, cap)
        case "order":
            report = order_suite(S, seed, samples, pair_cap)
        case _:
            raise BadParams(f"unknown suite {suite!r}, expected one of {list(SUITE_NAMES)}")
    log.info(f"suite {suite}: {len(report.checks)} checks, {len(report.violations)} violations")
    return report
