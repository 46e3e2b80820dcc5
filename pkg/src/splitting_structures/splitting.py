"""
Splitting behaviour under point removal.

x splits a connected ground when removing it leaves several components;
a ~x b holds when a and b stay in the same component of ground minus x.
"""
from collections.abc import Iterable
from dataclasses import dataclass

from dagster import get_dagster_logger

from splitting_structures.errors import (
    GroundDisconnected,
    LemmaViolated,
    NotInGround,
    PreconditionViolated,
    SingletonGround,
)
from splitting_structures.space import Partition, Space, VertexSet, boundary, check_members, components, is_connected

log = get_dagster_logger(__name__)


@dataclass(frozen=True)
class SplitProfile:
    point: int
    count: int
    classes: Partition

    def related(self, a: int, b: int) -> bool:
        """a ~x b"""
        return self.classes.same_block(a, b)


@dataclass(frozen=True)
class FlatWitness:
    point: int
    a: int
    b: int
    U: int


@dataclass(frozen=True)
class NotFlat:
    point: int


@dataclass(frozen=True)
class ThreePartSplit:
    a_side: VertexSet
    a: int
    middle: VertexSet
    b: int
    b_side: VertexSet


def _connected_ground(S: Space, ground: Iterable[int]) -> VertexSet:
    ground = check_members(S, ground)
    if not ground or not is_connected(S, ground):
        raise GroundDisconnected(f"ground of {len(ground)} points is not connected")
    return ground


def sim_classes(S: Space, ground: Iterable[int], x: int) -> SplitProfile:
    ground = check_members(S, ground)
    if x not in ground:
        raise NotInGround(f"point {x} is not in the ground set")
    ground = _connected_ground(S, ground)
    if ground == {x}:
        raise SingletonGround(f"ground is the single point {x}")
    classes = components(S, ground, {x})
    return SplitProfile(point=x, count=len(classes), classes=classes)


def split_count(S: Space, ground: Iterable[int], x: int) -> int:
    return sim_classes(S, ground, x).count


def _separating_partitions(S: Space, ground: VertexSet, U: VertexSet) -> list[Partition]:
    return [components(S, ground, {u}) for u in sorted(U & ground)]


def _witness_pair(ground: VertexSet, U: VertexSet, partitions: list[Partition]) -> tuple[int, int] | None:
    # b must leave a's block for every removed u, so intersect the complements
    outside = ground - U
    for a in sorted(outside):
        allowed = set(outside)
        allowed.discard(a)
        for p in partitions:
            allowed -= p.block_containing(a)
            if not allowed:
                break
        if allowed:
            return a, min(allowed)
    return None


def is_locally_flat(S: Space, ground: Iterable[int], x: int) -> FlatWitness | NotFlat:
    """
    Search for a basis neighbourhood U of x and points a, b that every point
    of U separates.

    U must contain x together with all of x's neighbours in the ground.
    """
    ground = check_members(S, ground)
    if x not in ground:
        raise NotInGround(f"point {x} is not in the ground set")
    near = S.neighbors(x) & ground
    for i in S.containing(x):
        U = S.basis[i]
        if not near <= U:
            continue
        pair = _witness_pair(ground, U, _separating_partitions(S, ground, U))
        if pair is not None:
            return FlatWitness(point=x, a=pair[0], b=pair[1], U=i)
    return NotFlat(point=x)


def non_flat_set(S: Space, ground: Iterable[int]) -> VertexSet:
    ground = _connected_ground(S, ground)
    out = frozenset(x for x in ground if isinstance(is_locally_flat(S, ground, x), NotFlat))
    log.info(f"{len(out)} of {len(ground)} points are not locally flat")
    return out


def verify_three_part_split(S: Space, C: Iterable[int], a: int, b: int) -> ThreePartSplit:
    """
    Split C around two splitting points a and b and check the five pieces.

    The middle may be empty only when a and b are adjacent.
    """
    C = check_members(S, C)
    if a == b:
        raise PreconditionViolated("a and b must be distinct")
    if a not in C or b not in C:
        raise PreconditionViolated(f"points {a} and {b} must both lie in C")
    if not is_connected(S, C):
        raise PreconditionViolated("C is not connected")
    around_a = components(S, C, {a})
    around_b = components(S, C, {b})
    if len(around_a) < 2 or len(around_b) < 2:
        raise PreconditionViolated(f"{a} and {b} must both split C")

    a_first = around_a.block_containing(b)
    b_first = around_b.block_containing(a)
    split = ThreePartSplit(
        a_side=frozenset().union(*(blk for blk in around_a.blocks if blk != a_first)),
        a=a,
        middle=a_first & b_first,
        b=b,
        b_side=frozenset().union(*(blk for blk in around_b.blocks if blk != b_first)),
    )

    def inner_boundary(X: VertexSet) -> VertexSet:
        return boundary(S, X) & C

    pieces = [split.a_side, {a}, split.middle, {b}, split.b_side]
    if sum(len(p) for p in pieces) != len(C) or frozenset().union(*pieces) != C:
        raise LemmaViolated(f"pieces around {a} and {b} do not form a disjoint cover of C")
    if inner_boundary(split.a_side) != {a}:
        raise LemmaViolated(f"boundary of the side cut off by {a} is {sorted(inner_boundary(split.a_side))}")
    if inner_boundary(split.b_side) != {b}:
        raise LemmaViolated(f"boundary of the side cut off by {b} is {sorted(inner_boundary(split.b_side))}")
    if split.middle:
        if inner_boundary(split.middle) != {a, b}:
            raise LemmaViolated(f"middle between {a} and {b} is {sorted(split.middle)}")
    elif b not in S.neighbors(a):
        raise LemmaViolated(f"middle between {a} and {b} is {sorted(split.middle)}")
    return split


def separation_region(S: Space, D: Iterable[int], a: int, b: int) -> VertexSet:
    """Points of D other than a and b whose removal separates a from b inside D."""
    D = check_members(S, D)
    if a not in D or b not in D:
        raise PreconditionViolated(f"points {a} and {b} must both lie in D")
    if not is_connected(S, D):
        raise PreconditionViolated("D is not connected")
    return frozenset(
        x for x in D - {a, b}
        if not components(S, D, {x}).same_block(a, b)
    )
