"""
Intervals, the order reconstructed from separation, and the decomposition
of a splitting structure into ordered components.

The order <_{a,D} on a connected D anchored at a splits D minus a into a
negative side D- (the side holding the smallest id) and a positive side D+:

    x, y in D+ : x < y  iff  x separates a from y
    x, y in D- : x < y  iff  y separates a from x
    D- < a < D+
"""
import itertools
import random
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from dagster import get_dagster_logger

from splitting_structures.errors import (
    AnchorDoesNotSplit,
    ComponentNotOrderable,
    LemmaViolated,
    NotTotalOrder,
    PreconditionViolated,
)
from splitting_structures.reports import LawReport
from splitting_structures.space import (
    Space,
    VertexSet,
    boundary,
    check_members,
    components,
    grow_connected,
    is_connected,
)
from splitting_structures.splitting import NotFlat, is_locally_flat, non_flat_set

log = get_dagster_logger(__name__)

# exhaustive enumeration of connected subsets up to this size
EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class Interval:
    ambient: VertexSet
    x: int
    y: int
    members: VertexSet
    open_connected: bool = True


@dataclass(frozen=True)
class OrderChart:
    domain: VertexSet
    anchor: int
    rank: Mapping[int, int]

    @cached_property
    def sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.domain, key=self.rank.__getitem__))

    def less(self, x: int, y: int) -> bool:
        return self.rank[x] < self.rank[y]

    def between(self, c: int, d: int) -> VertexSet:
        lo, hi = sorted((self.rank[c], self.rank[d]))
        return frozenset(self.sequence[lo + 1:hi])

    def to_dict(self) -> dict:
        return {"anchor": self.anchor, "sequence": list(self.sequence)}


@dataclass(frozen=True)
class Decomposition:
    removed: VertexSet
    components: tuple[OrderChart, ...]
    reports: tuple[LawReport, ...] = field(default=())


def _require_connected(S: Space, ambient: VertexSet, *points: int) -> None:
    missing = [p for p in points if p not in ambient]
    if missing:
        raise PreconditionViolated(f"points {missing} are not in the ambient set")
    if not is_connected(S, ambient):
        raise PreconditionViolated("ambient set is not connected")


def interval(S: Space, ambient: Iterable[int], x: int, y: int) -> Interval:
    """
    I(x, y): the part of ambient lying between x and y.

    The boundary of the members inside ambient must stay within {x, y}.
    For distinct, non-adjacent splitting points the members should also be
    non-empty and connected; graphs where some points do not split can
    break that, which is recorded on the result rather than raised.
    """
    ambient = check_members(S, ambient)
    _require_connected(S, ambient, x, y)
    if x == y:
        return Interval(ambient=ambient, x=x, y=y, members=frozenset())

    around_x = components(S, ambient, {x})
    around_y = components(S, ambient, {y})
    members = around_x.block_containing(y) & around_y.block_containing(x)

    stray = (boundary(S, members) & ambient) - {x, y}
    if stray:
        raise LemmaViolated(f"I({x}, {y}) has boundary points {sorted(stray)} besides its ends")

    open_connected = True
    if y not in S.neighbors(x) and len(around_x) >= 2 and len(around_y) >= 2:
        open_connected = bool(members) and is_connected(S, members)
        if not open_connected:
            log.warning(f"I({x}, {y}) is empty or disconnected; the space has points that do not split")
    return Interval(ambient=ambient, x=x, y=y, members=members, open_connected=open_connected)


def five_case_ranks(
    domain: VertexSet,
    anchor: int,
    negative: VertexSet,
    separates: Callable[[int, int, int], bool],
) -> dict[int, int]:
    """
    Ranks realizing <_{anchor,domain}; separates(x, p, q) tells whether
    removing x puts p and q in different classes.

    Raises NotTotalOrder when the comparison is not a strict total order.
    """
    positive = domain - negative - {anchor}

    def less(x: int, y: int) -> bool:
        if x == y:
            return False
        if x in positive and y in positive:
            return separates(x, anchor, y)
        if x in negative and y in negative:
            return separates(y, anchor, x)
        if x in negative:
            return y in positive or y == anchor
        return x == anchor and y in positive

    points = sorted(domain)
    below = {x: {y for y in points if less(y, x)} for x in points}
    rank = {x: len(below[x]) for x in points}
    if sorted(rank.values()) != list(range(len(points))):
        raise NotTotalOrder(f"comparison anchored at {anchor} is not a total order on {len(points)} points")
    for x, y in itertools.permutations(points, 2):
        if (y in below[x]) != (rank[y] < rank[x]):
            raise NotTotalOrder(f"{x} and {y} are ordered inconsistently")
    return rank


def order_chart(S: Space, D: Iterable[int], a: int) -> OrderChart:
    D = check_members(S, D)
    _require_connected(S, D, a)
    sides = components(S, D, {a})
    if len(sides) != 2:
        raise AnchorDoesNotSplit(a, len(sides))
    # sides are ordered by smallest member, so the first is D-
    negative = sides.blocks[0]
    profiles = {x: components(S, D, {x}) for x in D}

    def separates(x: int, p: int, q: int) -> bool:
        return not profiles[x].same_block(p, q)

    rank = five_case_ranks(D, a, negative, separates)
    return OrderChart(domain=D, anchor=a, rank=rank)


def trivial_chart(D: Iterable[int]) -> OrderChart:
    """Chart by id order, for domains too small to have a splitting anchor."""
    points = sorted(D)
    return OrderChart(domain=frozenset(points), anchor=points[0], rank={v: i for i, v in enumerate(points)})


def check_subinterval_law(S: Space, chart: OrderChart) -> LawReport:
    violations = []
    checked = 0
    seq = chart.sequence
    for i, j in itertools.combinations(range(len(seq)), 2):
        c, d = seq[i], seq[j]
        got = interval(S, chart.domain, c, d).members
        want = frozenset(seq[i + 1:j])
        checked += 1
        if got != want:
            violations.append({"c": c, "d": d, "interval": sorted(got), "between": sorted(want)})
    return LawReport(law="subinterval", checked=checked, violations=tuple(violations))


def check_order_topology(S: Space, chart: OrderChart) -> LawReport:
    """
    Basis sets inside the domain are order intervals, and every order
    interval away from the ends is some I(c, d).
    """
    violations = []
    checked = 0
    for i, B in enumerate(S.basis):
        if not B <= chart.domain:
            continue
        ranks = sorted(chart.rank[v] for v in B)
        checked += 1
        if ranks[-1] - ranks[0] + 1 != len(ranks):
            violations.append({"basis": i, "members": sorted(B)})

    seq = chart.sequence
    for i in range(1, len(seq) - 1):
        for j in range(i, len(seq) - 1):
            want = frozenset(seq[i:j + 1])
            got = interval(S, chart.domain, seq[i - 1], seq[j + 1]).members
            checked += 1
            if got != want:
                violations.append({"c": seq[i - 1], "d": seq[j + 1], "interval": sorted(got), "between": sorted(want)})
    return LawReport(law="order_topology", checked=checked, violations=tuple(violations))


def splitting_anchor(S: Space, D: VertexSet) -> int | None:
    """Smallest-id point of D whose removal leaves exactly two components."""
    return next((v for v in sorted(D) if len(components(S, D, {v})) == 2), None)


def chart_component(S: Space, C: Iterable[int]) -> OrderChart:
    C = check_members(S, C)
    if len(C) <= 2:
        return trivial_chart(C)
    anchor = splitting_anchor(S, C)
    if anchor is None:
        raise ComponentNotOrderable(f"no point splits the component {sorted(C)} in two")
    try:
        return order_chart(S, C, anchor)
    except NotTotalOrder as e:
        raise ComponentNotOrderable(f"component {sorted(C)}: {e}") from e


def decompose(S: Space, ground: Iterable[int]) -> Decomposition:
    """Remove the points that are not locally flat and chart what is left."""
    ground = check_members(S, ground)
    if ground and not is_connected(S, ground):
        raise ComponentNotOrderable(f"ground {sorted(ground)} is not connected")
    removed = non_flat_set(S, ground)
    charts = []
    reports = []
    for C in components(S, ground, removed).blocks:
        chart = chart_component(S, C)
        for report in (check_subinterval_law(S, chart), check_order_topology(S, chart)):
            if not report.passed:
                raise ComponentNotOrderable(
                    f"chart on {sorted(C)} fails {report.law}: {report.violations[0]}"
                )
            reports.append(report)
        charts.append(chart)
    log.info(f"removed {len(removed)} points, charted {len(charts)} components")
    return Decomposition(removed=removed, components=tuple(charts), reports=tuple(reports))


def connected_subsets(S: Space, D: VertexSet, samples: int, seed: int) -> list[VertexSet]:
    """Every connected subset of a small D, else `samples` random ones."""
    if len(D) <= EXHAUSTIVE_LIMIT:
        points = sorted(D)
        return [
            frozenset(c)
            for k in range(1, len(points) + 1)
            for c in itertools.combinations(points, k)
            if is_connected(S, c)
        ]
    rng = random.Random(seed)
    return [grow_connected(S, D, rng) for _ in range(samples)]


def boundary_pair_check(S: Space, D: Iterable[int], samples: int = 200, seed: int = 0) -> LawReport:
    """Connected subsets of a locally flat D have at most two boundary points inside D."""
    D = check_members(S, D)
    if not D or not is_connected(S, D):
        raise PreconditionViolated("D must be non-empty and connected")
    rough = [x for x in sorted(D) if isinstance(is_locally_flat(S, S.vertices, x), NotFlat)]
    if rough:
        raise PreconditionViolated(f"points {rough} of D are not locally flat")

    violations = []
    subsets = connected_subsets(S, D, samples, seed)
    for F in subsets:
        inner = boundary(S, F) & D
        if len(inner) > 2:
            violations.append({"subset": sorted(F), "boundary": sorted(inner)})
    return LawReport(law="boundary_pair", checked=len(subsets), violations=tuple(violations))


def same_up_to_reversal(first: Sequence[int], second: Sequence[int]) -> bool:
    return list(first) == list(second) or list(first) == list(reversed(second))
