"""
Fixture builders.

Standard spaces (paths, cycles, stars, theta graphs, random trees) with a
ball basis, spaces decoded from a betweenness relation, and paths whose
basis holds only short open intervals.
"""
import itertools
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum

import networkx as nx
from dagster import get_dagster_logger

from splitting_structures.errors import (
    BadParams,
    NotBetweennessRealizable,
    NotTotalOrder,
    OutOfRange,
    PreconditionViolated,
)
from splitting_structures.order import OrderChart, five_case_ranks
from splitting_structures.schema import BallBasis, BetweennessFile, ShortIntervalBasis
from splitting_structures.space import Space, build_space

log = get_dagster_logger(__name__)

Triple = tuple[int, int, int]


class SpaceKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"
    STAR = "star"
    THETA = "theta"
    RANDOM_TREE = "random_tree"


def _path_edges(points: Sequence[int]) -> list[tuple[int, int]]:
    return list(itertools.pairwise(points))


def _star_edges(arms: int, length: int) -> list[tuple[int, int]]:
    # centre 0, arm i runs 1 + i*length .. (i+1)*length outwards
    edges = []
    for i in range(arms):
        edges += _path_edges([0, *range(1 + i * length, (i + 1) * length + 1)])
    return edges


def _theta_edges(length: int) -> list[tuple[int, int]]:
    # branch points 0 and 1, three paths of `length` edges between them
    inner = length - 1
    edges = []
    for i in range(3):
        start = 2 + i * inner
        edges += _path_edges([0, *range(start, start + inner), 1])
    return edges


def _random_tree_edges(n: int, seed: int) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    rng = random.Random(seed)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    return list(nx.from_prufer_sequence(sequence).edges)


def gen_standard(
    kind: SpaceKind | str,
    n: int = 7,
    arms: int = 3,
    length: int = 4,
    seed: int = 0,
    radii: Sequence[int] = (1,),
) -> Space:
    """
    Build a standard fixture with a ball basis.

    `n` sizes paths, cycles and random trees; `arms` and `length` shape
    stars; `length` is the number of edges on each of the three theta paths.
    """
    try:
        kind = SpaceKind(kind)
    except ValueError:
        raise BadParams(f"unknown space kind {kind!r}") from None
    radii = tuple(radii)
    if not radii or any(r < 0 for r in radii):
        raise BadParams(f"radii must be a non-empty list of non-negative integers, got {list(radii)}")

    match kind:
        case SpaceKind.PATH:
            if n < 3:
                raise BadParams(f"a path needs at least 3 points, got {n}")
            edges, points = _path_edges(range(n)), n
        case SpaceKind.CYCLE:
            if n < 3:
                raise BadParams(f"a cycle needs at least 3 points, got {n}")
            too_wide = [r for r in radii if 3 * r + 3 > n]
            if too_wide:
                # a ball must leave room for a ball pierced at its centre
                raise BadParams(f"radii {too_wide} reach around a cycle of {n} points")
            edges, points = [*_path_edges(range(n)), (n - 1, 0)], n
        case SpaceKind.STAR:
            if arms < 3 or length < 1:
                raise BadParams(f"a star needs at least 3 arms of length at least 1, got {arms} x {length}")
            edges, points = _star_edges(arms, length), 1 + arms * length
        case SpaceKind.THETA:
            if length < 2:
                raise BadParams(f"theta paths need length at least 2, got {length}")
            edges, points = _theta_edges(length), 2 + 3 * (length - 1)
        case SpaceKind.RANDOM_TREE:
            if n < 2:
                raise BadParams(f"a random tree needs at least 2 points, got {n}")
            edges, points = _random_tree_edges(n, seed), n

    log.debug(f"generated {kind.value} with {points} points")
    return build_space(edges, BallBasis(radii=radii), points=points)


@dataclass(frozen=True)
class BetweennessRelation:
    """Triples (x, y, z) meaning z lies strictly between x and y; closed under swapping x and y."""

    n: int
    triples: frozenset[Triple]

    @classmethod
    def of(cls, n: int, triples: Iterable[Sequence[int]]) -> "BetweennessRelation":
        closed = set()
        for x, y, z in triples:
            bad = [v for v in (x, y, z) if not 0 <= v < n]
            if bad:
                raise OutOfRange(f"triple ({x}, {y}, {z}) refers to points {bad} outside [0, {n})")
            if x == y or z in (x, y):
                raise PreconditionViolated(f"triple ({x}, {y}, {z}) repeats a point")
            closed.add((x, y, z))
            closed.add((y, x, z))
        return cls(n=n, triples=frozenset(closed))

    @classmethod
    def from_document(cls, document: BetweennessFile) -> "BetweennessRelation":
        return cls.of(document.points, document.triples)

    def between(self, x: int, y: int, z: int) -> bool:
        return (x, y, z) in self.triples

    def to_document(self) -> BetweennessFile:
        return BetweennessFile(points=self.n, triples=tuple(sorted(self.triples)))


def betweenness_of(order: Sequence[int]) -> BetweennessRelation:
    """Strict betweenness of the total order listing the points in `order`."""
    triples = [
        (order[i], order[j], order[k])
        for i, j in itertools.combinations(range(len(order)), 2)
        for k in range(i + 1, j)
    ]
    return BetweennessRelation.of(len(order), triples)


def _not_between_classes(rel: BetweennessRelation, x: int) -> list[set[int]]:
    # a ~x b  iff  x is not between a and b
    graph = nx.Graph()
    rest = [v for v in range(rel.n) if v != x]
    graph.add_nodes_from(rest)
    graph.add_edges_from((a, b) for a, b in itertools.combinations(rest, 2) if not rel.between(a, b, x))
    return sorted(nx.connected_components(graph), key=min)


def from_betweenness(rel: BetweennessRelation) -> tuple[Space, OrderChart]:
    """Recover the total order behind a betweenness relation, with its path space."""
    if not rel.triples or rel.n < 3:
        raise PreconditionViolated("need a non-empty relation on at least 3 points")

    anchor = None
    for x in range(rel.n):
        classes = _not_between_classes(rel, x)
        if len(classes) == 2:
            anchor = x
            break
    if anchor is None:
        raise NotBetweennessRealizable("no point splits the others into two classes")

    domain = frozenset(range(rel.n))
    try:
        rank = five_case_ranks(domain, anchor, frozenset(classes[0]), lambda x, p, q: rel.between(p, q, x))
    except NotTotalOrder as e:
        raise NotBetweennessRealizable(str(e)) from e

    chart = OrderChart(domain=domain, anchor=anchor, rank=rank)
    if betweenness_of(chart.sequence) != rel:
        raise NotBetweennessRealizable(f"order {list(chart.sequence)} does not reproduce the relation")
    return build_space(_path_edges(chart.sequence), BallBasis(radii=(1,)), points=rel.n), chart


def restricted_interval_structure(n: int, window: int) -> Space:
    """Path on n points whose basis holds only the open intervals of length at most `window`."""
    if window < 2:
        raise BadParams(f"window must be at least 2, got {window}")
    if n < 2 * window + 2:
        raise BadParams(f"need at least {2 * window + 2} points for window {window}, got {n}")
    return build_space(_path_edges(range(n)), ShortIntervalBasis(window=window), points=n)
