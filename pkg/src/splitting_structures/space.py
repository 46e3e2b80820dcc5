"""
Finite combinatorial model of a one-dimensional topological structure.

A Space is a frozen graph (the 1-complex) together with a family of
basis sets. Open connected sets are vertex sets inducing connected
subgraphs, and the boundary of a set is its set of external neighbours.
"""
import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from dagster import get_dagster_logger

from splitting_structures.errors import (
    BasisDoesNotCover,
    DuplicateEdge,
    EmptyBasisSet,
    IsolatedVertex,
    LemmaViolated,
    OutOfRange,
    SelfLoop,
)
from splitting_structures.schema import BallBasis, BasisSpec, ExplicitBasis, ShortIntervalBasis, SpaceFile

VertexSet = frozenset[int]

log = get_dagster_logger(__name__)


@dataclass(frozen=True, eq=False)
class Space:
    graph: nx.Graph
    basis: tuple[VertexSet, ...]
    basis_spec: BasisSpec

    @property
    def n(self) -> int:
        return self.graph.number_of_nodes()

    @cached_property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    @property
    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(self.graph[v])

    def basis_index(self, members: Iterable[int]) -> int:
        """Index of the basis set equal to `members`."""
        return self.basis.index(frozenset(members))

    def containing(self, x: int) -> list[int]:
        """Indices of the basis sets that contain x, ascending."""
        return [i for i, b in enumerate(self.basis) if x in b]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((min(u, v), max(u, v)) for u, v in self.graph.edges)

    def to_document(self) -> SpaceFile:
        return SpaceFile(points=self.n, edges=tuple(self.edges()), basis=self.basis_spec)


@dataclass(frozen=True)
class Partition:
    """Blocks ordered by their smallest member."""

    blocks: tuple[VertexSet, ...]

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def same_block(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def block_containing(self, v: int) -> VertexSet:
        return self.blocks[self.block_of[v]]

    def __len__(self) -> int:
        return len(self.blocks)

    def as_lists(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


@dataclass(frozen=True)
class CanonicalDecomposition:
    open_parts: tuple[VertexSet, ...]
    residue: VertexSet


def _ball_sets(graph: nx.Graph, radii: Sequence[int]) -> list[VertexSet]:
    sets = []
    for v in sorted(graph.nodes):
        for r in radii:
            sets.append(frozenset(nx.single_source_shortest_path_length(graph, v, cutoff=r)))
    return sets


def _short_interval_sets(n: int, window: int) -> list[VertexSet]:
    # a and b may sit one step outside [0, n) so the end vertices are covered
    sets = []
    for a in range(-1, n):
        for b in range(a + 2, min(a + window, n) + 1):
            sets.append(frozenset(range(max(a + 1, 0), min(b, n))))
    return sets


def _basis_sets(graph: nx.Graph, spec: BasisSpec) -> list[VertexSet]:
    match spec:
        case BallBasis(radii=radii):
            return _ball_sets(graph, radii)
        case ShortIntervalBasis(window=window):
            return _short_interval_sets(graph.number_of_nodes(), window)
        case ExplicitBasis(sets=sets):
            n = graph.number_of_nodes()
            out = []
            for s in sets:
                if not s:
                    raise EmptyBasisSet("explicit basis contains an empty set")
                bad = [v for v in s if not 0 <= v < n]
                if bad:
                    raise OutOfRange(f"basis set refers to missing points {bad}")
                out.append(frozenset(s))
            return out
    raise TypeError(f"unsupported basis descriptor {spec!r}")


def build_space(edges: Iterable[Sequence[int]], basis_spec: BasisSpec, points: int | None = None) -> Space:
    """Validate edges and basis, and freeze them into a Space."""
    edges = [tuple(e) for e in edges]
    if points is None:
        points = max((max(e) for e in edges), default=-1) + 1

    graph = nx.Graph()
    graph.add_nodes_from(range(points))
    for u, v in edges:
        if not (0 <= u < points and 0 <= v < points):
            raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {points})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        if graph.has_edge(u, v):
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        graph.add_edge(u, v)

    isolated = sorted(nx.isolates(graph))
    if isolated:
        raise IsolatedVertex(f"isolated vertices {isolated}")

    basis = list(dict.fromkeys(_basis_sets(graph, basis_spec)))
    if any(not b for b in basis):
        raise EmptyBasisSet("basis contains an empty set")
    covered = frozenset().union(*basis)
    missing = sorted(set(range(points)) - covered)
    if missing:
        raise BasisDoesNotCover(f"points {missing} lie in no basis set")

    log.debug(f"built space with {points} points, {len(edges)} edges, {len(basis)} basis sets")
    return Space(graph=nx.freeze(graph), basis=tuple(basis), basis_spec=basis_spec)


def space_from_document(document: SpaceFile) -> Space:
    return build_space(document.edges, document.basis, points=document.points)


def check_members(S: Space, U: Iterable[int]) -> VertexSet:
    U = frozenset(U)
    bad = sorted(v for v in U if not 0 <= v < S.n)
    if bad:
        raise OutOfRange(f"points {bad} are not vertices of the space")
    return U


def boundary(S: Space, U: Iterable[int]) -> VertexSet:
    """External neighbours of U."""
    U = check_members(S, U)
    return frozenset(nx.node_boundary(S.graph, U))


def components(S: Space, ground: Iterable[int], removed: Iterable[int] = ()) -> Partition:
    """Connected components of the subgraph induced on ground minus removed."""
    rest = check_members(S, ground) - check_members(S, removed)
    blocks = (frozenset(c) for c in nx.connected_components(S.graph.subgraph(rest)))
    return Partition(tuple(sorted(blocks, key=min)))


def is_connected(S: Space, ground: Iterable[int]) -> bool:
    return len(components(S, ground)) == 1


def interior(S: Space, X: Iterable[int]) -> VertexSet:
    """Vertices of X all of whose neighbours lie in X."""
    X = check_members(S, X)
    return frozenset(v for v in X if S.graph[v].keys() <= X)


def canonical_decomposition(S: Space, X: Iterable[int]) -> CanonicalDecomposition:
    X = check_members(S, X)
    inner = interior(S, X)
    return CanonicalDecomposition(open_parts=components(S, inner).blocks, residue=X - inner)


def max_basis_boundary(S: Space) -> int:
    return max((len(boundary(S, b)) for b in S.basis), default=0)


def boundary_classes(S: Space) -> dict[VertexSet, tuple[int, ...]]:
    """
    Group basis sets by their boundary.

    Connected components of basis sets sharing a boundary are pairwise equal
    or disjoint; a class where this fails raises LemmaViolated.
    """
    classes: dict[VertexSet, list[int]] = {}
    for i, b in enumerate(S.basis):
        classes.setdefault(boundary(S, b), []).append(i)

    for bd, members in classes.items():
        parts = {c for i in members for c in components(S, S.basis[i]).blocks}
        for c1 in parts:
            for c2 in parts:
                if c1 != c2 and c1 & c2:
                    raise LemmaViolated(
                        f"components {sorted(c1)} and {sorted(c2)} share boundary {sorted(bd)} but overlap"
                    )
    return {bd: tuple(members) for bd, members in classes.items()}


def grow_connected(S: Space, within: Iterable[int], rng: random.Random, size: int | None = None) -> VertexSet:
    """Random connected subset of `within`, grown from a random seed vertex."""
    within = check_members(S, within)
    if not within:
        return frozenset()
    pool = sorted(within)
    size = size if size is not None else rng.randint(1, len(pool))
    grown = {rng.choice(pool)}
    frontier = set(nx.node_boundary(S.graph, grown)) & within
    while len(grown) < size and frontier:
        v = rng.choice(sorted(frontier))
        grown.add(v)
        frontier = (frontier | set(S.graph[v])) & (within - grown)
    return frozenset(grown)
