"""
Local order charts for structures that do not split globally.

When every small basis set has two boundary points, a basis set can be
shrunk to one whose points are each pierced by some basis boundary; such a
set splits at every point and carries an order chart. Charts are collected
greedily into an atlas, and on a circle the atlas stitches into a cyclic
order.
"""
import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

import networkx as nx
from dagster import get_dagster_logger

from splitting_structures.errors import (
    BoundaryNotTwo,
    GroundDisconnected,
    NoPierceableSubset,
    NotTotalOrder,
    OutOfRange,
    OverlapInconsistent,
    PreconditionViolated,
    ValueOutsideCodomain,
)
from splitting_structures.order import (
    OrderChart,
    check_order_topology,
    check_subinterval_law,
    order_chart,
    same_up_to_reversal,
    splitting_anchor,
    trivial_chart,
)
from splitting_structures.space import Space, VertexSet, boundary, check_members, components, is_connected

log = get_dagster_logger(__name__)


@dataclass(frozen=True)
class NoChart:
    point: int
    reason: str


@dataclass(frozen=True)
class Atlas:
    charts: tuple[OrderChart, ...]
    uncovered: VertexSet


@dataclass(frozen=True)
class CyclicOrder:
    cycle: tuple[int, ...]


@dataclass(frozen=True)
class NotCyclic:
    reason: str


class Direction(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


@dataclass(frozen=True)
class Segment:
    start: int
    end: int
    direction: Direction


@dataclass(frozen=True)
class MonotoneReport:
    breakpoints: VertexSet
    segments: tuple[Segment, ...]
    jumps: VertexSet = frozenset()

    def to_dict(self) -> dict:
        return {
            "breakpoints": sorted(self.breakpoints),
            "segments": [[s.start, s.end, s.direction.value] for s in self.segments],
            "jumps": sorted(self.jumps),
        }


def unpierced_points(S: Space) -> VertexSet:
    """Points lying on no basis boundary."""
    pierced = frozenset().union(*(boundary(S, B) for B in S.basis))
    return S.vertices - pierced


def pierceable_basis(S: Space, U_index: int, point: int | None = None) -> int:
    """
    A basis set V inside basis set U such that every x in V is the only
    point of V on the boundary of some basis set.

    Basis sets inside U must have exactly two boundary points. Candidates are
    tried smallest first, then farthest from the boundary of U, then by index;
    `point` keeps only those containing it.
    """
    if not 0 <= U_index < len(S.basis):
        raise OutOfRange(f"no basis set with index {U_index}")
    U = S.basis[U_index]
    inside = [i for i, B in enumerate(S.basis) if B <= U]
    wrong = [i for i in inside if len(boundary(S, S.basis[i])) != 2]
    if wrong:
        raise BoundaryNotTwo(f"basis sets {wrong} inside basis set {U_index} do not have two boundary points")

    boundaries = [boundary(S, B) for B in S.basis]
    outer = boundary(S, U)
    reach = nx.multi_source_dijkstra_path_length(S.graph, outer) if outer else {}

    def margin(i: int) -> float:
        return min((reach.get(v, math.inf) for v in S.basis[i]), default=math.inf)

    candidates = sorted(inside, key=lambda i: (len(S.basis[i]), -margin(i), i))
    if point is not None:
        candidates = [i for i in candidates if point in S.basis[i]]
    for i in candidates:
        V = S.basis[i]
        if all(any(bd & V == {x} for bd in boundaries) for x in V):
            return i
    raise NoPierceableSubset(f"no basis set inside basis set {U_index} is pierced at every point")


def _depth(S: Space, distances: Mapping[int, int], i: int) -> tuple[float, float]:
    """Distance from the point to the nearest and to the farthest boundary point of basis set i."""
    reach = [distances.get(p, math.inf) for p in boundary(S, S.basis[i])]
    return min(reach, default=math.inf), max(reach, default=math.inf)


def local_chart(S: Space, x: int, ground: VertexSet | None = None) -> OrderChart | NoChart:
    """
    Chart on a pierceable basis set around x, preferring sets where x sits deepest.

    With a ground, the chart domain is the part of that set inside the ground
    that is connected to x.
    """
    check_members(S, {x})
    ground = S.vertices if ground is None else check_members(S, ground)
    if x not in ground:
        raise PreconditionViolated(f"point {x} is not in the ground")
    distances = nx.single_source_shortest_path_length(S.graph, x)

    def key(i: int) -> tuple:
        near, far = _depth(S, distances, i)
        return -near, far, -len(S.basis[i]), i

    enclosing = sorted(S.containing(x), key=key)
    for i in enclosing:
        try:
            v = pierceable_basis(S, i, point=x)
        except (BoundaryNotTwo, NoPierceableSubset) as e:
            log.debug(f"basis set {i} around {x}: {e}")
            continue
        C = components(S, S.basis[v] & ground).block_containing(x)
        if len(components(S, C, {x})) == 2:
            anchor = x
        else:
            anchor = splitting_anchor(S, C)
        if anchor is None:
            if len(C) > 2:
                continue
            chart = trivial_chart(C)
        else:
            try:
                chart = order_chart(S, C, anchor)
            except NotTotalOrder:
                continue
        if check_subinterval_law(S, chart).passed and check_order_topology(S, chart).passed:
            return chart
        log.warning(f"chart on basis set {v} around {x} fails its order checks")
    return NoChart(point=x, reason="no enclosing basis set yields an order chart")


def _check_overlaps(charts: list[OrderChart]) -> None:
    for i, first in enumerate(charts):
        for j in range(i + 1, len(charts)):
            second = charts[j]
            common = first.domain & second.domain
            if len(common) < 2:
                continue
            one = [v for v in first.sequence if v in common]
            two = [v for v in second.sequence if v in common]
            if not same_up_to_reversal(one, two):
                raise OverlapInconsistent(f"charts {i} and {j} order their overlap as {one} and {two}")


def build_atlas(S: Space, ground) -> Atlas:
    ground = check_members(S, ground)
    if not ground or not is_connected(S, ground):
        raise GroundDisconnected("atlas ground must be connected")
    charts: list[OrderChart] = []
    covered: set[int] = set()
    failed: set[int] = set()
    for x in sorted(ground):
        if x in covered:
            continue
        chart = local_chart(S, x, ground)
        if isinstance(chart, NoChart):
            failed.add(x)
            continue
        charts.append(chart)
        covered |= chart.domain
    _check_overlaps(charts)
    uncovered = frozenset(failed - covered)
    log.info(f"atlas of {len(charts)} charts, {len(uncovered)} uncovered points")
    return Atlas(charts=tuple(charts), uncovered=uncovered)


def circular_order(S: Space, atlas: Atlas) -> CyclicOrder | NotCyclic:
    """Stitch the charts of an atlas into one cyclic sequence."""
    if atlas.uncovered:
        return NotCyclic(f"atlas leaves {sorted(atlas.uncovered)} uncovered")
    charts = atlas.charts
    if len(charts) < 3:
        return NotCyclic(f"{len(charts)} charts cannot close a cycle")

    overlaps = nx.Graph()
    overlaps.add_nodes_from(range(len(charts)))
    for i, first in enumerate(charts):
        for j in range(i + 1, len(charts)):
            if first.domain & charts[j].domain:
                overlaps.add_edge(i, j)
    if not nx.is_connected(overlaps) or any(d != 2 for _, d in overlaps.degree):
        return NotCyclic("chart overlap graph is not a single cycle")

    stitched = nx.Graph()
    for chart in charts:
        nx.add_path(stitched, chart.sequence)
    if not nx.is_connected(stitched) or any(d != 2 for _, d in stitched.degree):
        return NotCyclic("chart orders do not stitch into a single cycle")

    start = min(stitched)
    previous, current = start, min(stitched[start])
    cycle = [start]
    while current != start:
        cycle.append(current)
        previous, current = current, next(v for v in stitched[current] if v != previous)
    return CyclicOrder(cycle=tuple(cycle))


def _direction(step: int) -> Direction:
    if step > 0:
        return Direction.INCREASING
    if step < 0:
        return Direction.DECREASING
    return Direction.CONSTANT


def monotone_decomposition(S: Space, f: Mapping[int, int], dom: OrderChart, cod: OrderChart) -> MonotoneReport:
    """
    Maximal monotone segments of f read through the two charts.

    Segments are closed rank ranges of dom; neighbouring segments share the
    breakpoint between them.
    """
    missing = sorted(dom.domain - f.keys())
    if missing:
        raise PreconditionViolated(f"f is undefined at {missing}")
    outside = sorted(v for v in dom.domain if f[v] not in cod.domain)
    if outside:
        raise ValueOutsideCodomain(f"f maps {outside} outside the codomain chart")

    seq = dom.sequence
    image = [cod.rank[f[v]] for v in seq]
    steps = [_direction(image[i + 1] - image[i]) for i in range(len(seq) - 1)]
    jumps = frozenset(seq[i] for i in range(len(seq) - 1) if abs(image[i + 1] - image[i]) > 1)
    if not steps:
        return MonotoneReport(breakpoints=frozenset(), segments=(Segment(0, 0, Direction.CONSTANT),), jumps=jumps)

    segments = []
    breakpoints = set()
    start = 0
    for i in range(1, len(steps)):
        if steps[i] != steps[i - 1]:
            segments.append(Segment(start, i, steps[i - 1]))
            breakpoints.add(seq[i])
            start = i
    segments.append(Segment(start, len(seq) - 1, steps[-1]))
    return MonotoneReport(breakpoints=frozenset(breakpoints), segments=tuple(segments), jumps=jumps)
