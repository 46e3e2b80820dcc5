"""
Component-count bounds.

K is the largest basis boundary. A set X with n boundary points has at most
n * K components, and a family of sets built from basis sets has at most
C = d * K * n components per member, with d the component count of the
space and n the largest boundary in the family.
"""
import itertools
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import Enum

from dagster import get_dagster_logger

from splitting_structures.errors import FamilyTooLarge, GroundDisconnected, UnknownFamily
from splitting_structures.order import interval
from splitting_structures.space import Space, VertexSet, boundary, components, is_connected, max_basis_boundary

log = get_dagster_logger(__name__)

DEFAULT_FAMILY_CAP = 100_000


class FamilyKind(str, Enum):
    BASIS = "basis"
    COMPLEMENTS = "complements"
    INTERVALS = "intervals"
    SYMMETRIC_DIFFERENCES = "symmetric_differences"
    BOOLEAN = "boolean"


@dataclass(frozen=True)
class Family:
    kind: FamilyKind
    depth: int = 2

    @classmethod
    def parse(cls, text: str) -> "Family":
        """`basis`, `intervals`, `boolean`, `boolean:1`, ..."""
        name, _, depth = text.partition(":")
        try:
            kind = FamilyKind(name)
        except ValueError:
            raise UnknownFamily(f"unknown family {text!r}") from None
        if kind is FamilyKind.BOOLEAN and depth:
            if depth not in ("1", "2"):
                raise UnknownFamily(f"boolean families have depth 1 or 2, got {depth!r}")
            return cls(kind, int(depth))
        return cls(kind)

    @property
    def label(self) -> str:
        return f"boolean:{self.depth}" if self.kind is FamilyKind.BOOLEAN else self.kind.value


@dataclass
class BoundReport:
    bound: int
    observed_max: int
    witnesses: list[tuple[str, int]] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "observed_max": self.observed_max,
            "witnesses": [list(w) for w in self.witnesses],
            "violations": self.violations,
        }


def _describe(X: VertexSet) -> str:
    return "{" + ",".join(str(v) for v in sorted(X)) + "}"


def component_bound_check(S: Space, samples: Iterable[Iterable[int]]) -> BoundReport:
    """
    Check d(X) <= |bd(X)| * K for every sampled X.

    A set without boundary in a connected space is empty or everything, so
    it is allowed one component.
    """
    if not is_connected(S, S.vertices):
        raise GroundDisconnected("component bound needs a connected space")
    K = max_basis_boundary(S)
    report = BoundReport(bound=0, observed_max=0)
    for X in samples:
        X = frozenset(X)
        n = len(boundary(S, X))
        d = len(components(S, X))
        allowed = n * K if n else 1
        report.bound = max(report.bound, allowed)
        report.observed_max = max(report.observed_max, d)
        report.witnesses.append((_describe(X), d))
        if d > allowed:
            report.violations.append({"set": sorted(X), "components": d, "boundary": n, "K": K})
    return report


# two-set boolean functions, indexed by their truth table over
# (in A and B, in A only, in B only, in neither)
_TRUTH_TABLES = list(itertools.product((False, True), repeat=4))


def _combine(A: VertexSet, B: VertexSet, everything: VertexSet, table: tuple[bool, ...]) -> VertexSet:
    cells = (A & B, A - B, B - A, everything - (A | B))
    return frozenset().union(*(c for c, keep in zip(cells, table) if keep))


def family_size(S: Space, family: Family) -> int:
    m = len(S.basis)
    match family.kind:
        case FamilyKind.BASIS | FamilyKind.COMPLEMENTS:
            return m
        case FamilyKind.INTERVALS:
            return S.n * (S.n - 1) // 2
        case FamilyKind.SYMMETRIC_DIFFERENCES:
            return m * (m - 1) // 2
        case FamilyKind.BOOLEAN:
            pairs = m * (m - 1) // 2 if family.depth == 2 else 0
            return 2 * m + len(_TRUTH_TABLES) * pairs


def enumerate_family(S: Space, family: Family) -> Iterator[tuple[str, VertexSet]]:
    everything = S.vertices
    basis = S.basis
    match family.kind:
        case FamilyKind.BASIS:
            for i, B in enumerate(basis):
                yield f"B{i}", B
        case FamilyKind.COMPLEMENTS:
            for i, B in enumerate(basis):
                yield f"~B{i}", everything - B
        case FamilyKind.INTERVALS:
            for x, y in itertools.combinations(range(S.n), 2):
                yield f"I({x},{y})", interval(S, everything, x, y).members
        case FamilyKind.SYMMETRIC_DIFFERENCES:
            for (i, A), (j, B) in itertools.combinations(enumerate(basis), 2):
                yield f"B{i}^B{j}", A ^ B
        case FamilyKind.BOOLEAN:
            for i, B in enumerate(basis):
                yield f"B{i}", B
                yield f"~B{i}", everything - B
            if family.depth == 2:
                for (i, A), (j, B) in itertools.combinations(enumerate(basis), 2):
                    for t, table in enumerate(_TRUTH_TABLES):
                        yield f"f{t}(B{i},B{j})", _combine(A, B, everything, table)


def family_component_bound(S: Space, family: Family | str, cap: int = DEFAULT_FAMILY_CAP) -> BoundReport:
    """Enumerate a family and check every member against C = d * K * n."""
    if isinstance(family, str):
        family = Family.parse(family)
    size = family_size(S, family)
    if size > cap:
        raise FamilyTooLarge(f"family {family.label} has {size} members, cap is {cap}")
    if family.kind is FamilyKind.INTERVALS and not is_connected(S, S.vertices):
        raise GroundDisconnected("intervals are taken in a connected space")

    members = list(enumerate_family(S, family))
    n = max((len(boundary(S, X)) for _, X in members), default=0)
    K = max_basis_boundary(S)
    d = len(components(S, S.vertices))
    C = d * K * n
    allowed = max(C, 1)

    report = BoundReport(bound=allowed, observed_max=0)
    for label, X in members:
        count = len(components(S, X))
        if count > report.observed_max:
            report.observed_max = count
            report.witnesses.append((label, count))
        if count > allowed:
            report.violations.append({"set": label, "members": sorted(X), "components": count})
    log.info(f"family {family.label}: {len(members)} members, observed max {report.observed_max}, C = {C}")
    return report
