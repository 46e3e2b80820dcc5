import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from splitting_structures.errors import (
    BasisDoesNotCover,
    DuplicateEdge,
    EmptyBasisSet,
    InputError,
    IsolatedVertex,
    OutOfRange,
    SelfLoop,
)
from splitting_structures.generators import gen_standard
from splitting_structures.schema import BallBasis, ExplicitBasis, dump_document, load_space_file
from splitting_structures.space import (
    boundary,
    boundary_classes,
    build_space,
    canonical_decomposition,
    components,
    grow_connected,
    is_connected,
    max_basis_boundary,
)
from splitting_structures.suites import union_find_classes

PATH_EDGES = [(i, i + 1) for i in range(6)]


def test_build_space_path():
    S = build_space(PATH_EDGES, BallBasis(radii=(1,)))
    assert S.n == 7
    assert S.edge_count == 6
    assert len(S.basis) == 7
    assert S.basis[0] == {0, 1}
    assert S.basis[3] == {2, 3, 4}


def test_build_space_rejects_bad_edges():
    with pytest.raises(SelfLoop):
        build_space([(0, 1), (1, 1)], BallBasis(radii=(1,)))
    with pytest.raises(DuplicateEdge):
        build_space([(0, 1), (1, 0)], BallBasis(radii=(1,)))
    with pytest.raises(OutOfRange):
        build_space([(0, 1), (1, 5)], BallBasis(radii=(1,)), points=3)
    with pytest.raises(IsolatedVertex):
        build_space([(0, 1), (1, 2)], BallBasis(radii=(1,)), points=4)


def test_build_space_rejects_bad_basis():
    with pytest.raises(EmptyBasisSet):
        build_space([(0, 1), (1, 2)], ExplicitBasis(sets=((0, 1), ())))
    with pytest.raises(BasisDoesNotCover):
        build_space([(0, 1), (1, 2)], ExplicitBasis(sets=((0, 1),)))
    with pytest.raises(OutOfRange):
        build_space([(0, 1), (1, 2)], ExplicitBasis(sets=((0, 1, 2), (2, 7))))
    # skips field validation, as a basis built in code would
    negative = ExplicitBasis.model_construct(sets=((0, 1, 2), (-1, 0)))
    with pytest.raises(OutOfRange):
        build_space([(0, 1), (1, 2)], negative)


def test_explicit_basis_duplicates_are_dropped():
    S = build_space([(0, 1), (1, 2)], ExplicitBasis(sets=((0, 1), (1, 2), (1, 0))))
    assert S.basis == (frozenset({0, 1}), frozenset({1, 2}))


def test_boundary_of_alternating_points():
    S = gen_standard("path", n=20)
    assert boundary(S, {3, 5, 7, 9}) == {2, 4, 6, 8, 10}
    assert boundary(S, S.vertices) == frozenset()
    with pytest.raises(OutOfRange):
        boundary(S, {25})


def test_components_after_removal():
    S = gen_standard("path", n=7)
    assert components(S, S.vertices, {3}).as_lists() == [[0, 1, 2], [4, 5, 6]]
    assert len(components(S, {0, 2, 4, 6})) == 4
    assert components(S, {1}, {1}).blocks == ()


def test_canonical_decomposition():
    S = gen_standard("path", n=10)
    parts = canonical_decomposition(S, {2, 3, 4, 5, 8})
    assert parts.open_parts == (frozenset({3, 4}),)
    assert parts.residue == {2, 5, 8}


def test_boundary_classes_groups_mirror_balls():
    S = gen_standard("path", n=7)
    classes = boundary_classes(S)
    assert classes[frozenset({3})] == (1, 5)
    assert sum(len(members) for members in classes.values()) == len(S.basis)


def test_max_basis_boundary():
    assert max_basis_boundary(gen_standard("path", n=7)) == 2
    assert max_basis_boundary(gen_standard("star", arms=3, length=4)) == 3
    assert max_basis_boundary(gen_standard("cycle", n=12, radii=(1, 2))) == 2


@settings(max_examples=50, deadline=None)
@given(n=st.integers(3, 25), seed=st.integers(0, 2**16), data=st.data())
def test_components_match_union_find(n, seed, data):
    S = gen_standard("random_tree", n=n, seed=seed)
    x = data.draw(st.integers(0, n - 1))
    blocks = components(S, S.vertices, {x}).blocks
    assert blocks == union_find_classes(S, S.vertices, x).blocks
    assert frozenset().union(*blocks) == S.vertices - {x}


@settings(max_examples=50, deadline=None)
@given(members=st.sets(st.integers(0, 23)))
def test_boundary_is_outside_the_set(members):
    S = gen_standard("cycle", n=24, radii=(1, 2))
    assert not boundary(S, members) & members


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**16))
def test_grow_connected_stays_connected(seed):
    S = gen_standard("star", arms=3, length=6)
    within = frozenset(range(7, 19)) | {0}
    grown = grow_connected(S, within, random.Random(seed))
    assert grown <= within
    assert is_connected(S, grown)


def test_space_file_round_trip(tmp_path):
    S = gen_standard("cycle", n=12, radii=(1, 2))
    path = tmp_path / "cycle12.json"
    path.write_text(dump_document(S.to_document()))
    document = load_space_file(path)
    assert document.points == 12
    assert document.basis == BallBasis(radii=(1, 2))
    assert sorted(document.edges) == S.edges()


def test_space_file_is_strict(tmp_path):
    path = tmp_path / "bad.json"
    body = {"version": 1, "points": 2, "edges": [[0, 1]], "basis": {"kind": "balls", "radii": [1]}, "extra": 1}
    path.write_text(json.dumps(body))
    with pytest.raises(InputError):
        load_space_file(path)

    body.pop("extra")
    body["version"] = 2
    path.write_text(json.dumps(body))
    with pytest.raises(InputError):
        load_space_file(path)

    with pytest.raises(InputError):
        load_space_file(tmp_path / "missing.json")
