import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from splitting_structures.errors import GroundDisconnected, NotInGround, PreconditionViolated, SingletonGround
from splitting_structures.generators import gen_standard
from splitting_structures.schema import BallBasis
from splitting_structures.space import build_space, components
from splitting_structures.splitting import (
    FlatWitness,
    NotFlat,
    is_locally_flat,
    non_flat_set,
    separation_region,
    sim_classes,
    split_count,
    verify_three_part_split,
)
from splitting_structures.suites import check_separation_oracle


@pytest.fixture
def path11():
    return gen_standard("path", n=11)


def test_sim_classes_on_path(path11):
    profile = sim_classes(path11, path11.vertices, 3)
    assert profile.count == 2
    assert profile.classes.as_lists() == [[0, 1, 2], list(range(4, 11))]
    assert profile.related(0, 2)
    assert not profile.related(2, 4)
    assert split_count(path11, path11.vertices, 0) == 1


def test_split_count_star_and_cycle():
    star = gen_standard("star", arms=3, length=4)
    assert split_count(star, star.vertices, 0) == 3
    cycle = gen_standard("cycle", n=12, radii=(1, 2))
    assert {split_count(cycle, cycle.vertices, x) for x in cycle.vertices} == {1}


def test_sim_classes_errors(path11):
    with pytest.raises(NotInGround):
        sim_classes(path11, {0, 1, 2}, 5)
    with pytest.raises(GroundDisconnected):
        sim_classes(path11, {0, 2}, 0)
    with pytest.raises(SingletonGround):
        sim_classes(path11, {3}, 3)


def test_adjacent_points_stay_related(path11):
    for x in path11.vertices:
        profile = sim_classes(path11, path11.vertices, x)
        for u, v in path11.edges():
            if x not in (u, v):
                assert profile.related(u, v)


def test_locally_flat_witness(path11):
    witness = is_locally_flat(path11, path11.vertices, 5)
    assert witness == FlatWitness(point=5, a=0, b=7, U=path11.basis_index({4, 5, 6}))

    U = path11.basis[witness.U]
    assert {4, 5, 6} <= U
    for u in U:
        assert not components(path11, path11.vertices, {u}).same_block(witness.a, witness.b)


def test_path_ends_are_not_flat(path11):
    assert is_locally_flat(path11, path11.vertices, 0) == NotFlat(point=0)
    assert non_flat_set(path11, path11.vertices) == {0, 1, 9, 10}


@pytest.mark.parametrize(
    "length, expected",
    [
        (4, {0, 3, 4, 7, 8, 11, 12}),
        (6, {0, 5, 6, 11, 12, 17, 18}),
    ],
)
def test_star_non_flat_set(length, expected):
    star = gen_standard("star", arms=3, length=length)
    assert non_flat_set(star, star.vertices) == expected


def test_cycle_has_no_flat_points():
    cycle = gen_standard("cycle", n=12, radii=(1, 2))
    assert non_flat_set(cycle, cycle.vertices) == cycle.vertices


def test_three_part_split_on_path():
    S = gen_standard("path", n=10)
    split = verify_three_part_split(S, S.vertices, 2, 6)
    assert split.a_side == {0, 1}
    assert split.middle == {3, 4, 5}
    assert split.b_side == {7, 8, 9}


def test_three_part_split_adjacent_points():
    S = gen_standard("path", n=10)
    split = verify_three_part_split(S, S.vertices, 3, 4)
    assert split.middle == frozenset()
    assert split.a_side == {0, 1, 2}
    assert split.b_side == {5, 6, 7, 8, 9}


def test_three_part_split_adjacent_points_with_a_chord():
    # triangle 0-1-2, pendant 3 on 0 and pendant 4 on 1
    S = build_space([(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)], BallBasis(radii=(1,)))
    split = verify_three_part_split(S, S.vertices, 0, 1)
    assert split.a_side == {3}
    assert split.middle == {2}
    assert split.b_side == {4}


def test_three_part_split_preconditions():
    S = gen_standard("path", n=10)
    with pytest.raises(PreconditionViolated):
        verify_three_part_split(S, S.vertices, 4, 4)
    with pytest.raises(PreconditionViolated):
        verify_three_part_split(S, S.vertices, 0, 4)
    with pytest.raises(PreconditionViolated):
        verify_three_part_split(S, {0, 1, 2, 5, 6}, 1, 5)


def test_three_part_split_through_star_centre():
    S = gen_standard("star", arms=3, length=4)
    split = verify_three_part_split(S, S.vertices, 0, 2)
    assert split.middle == {1}
    assert split.b_side == {3, 4}
    assert split.a_side == set(range(5, 13))


def test_separation_region(path11):
    assert separation_region(path11, path11.vertices, 2, 6) == {3, 4, 5}
    assert separation_region(path11, path11.vertices, 2, 3) == frozenset()


def test_three_part_split_holds_on_random_trees():
    rng = random.Random(42)
    for _ in range(200):
        S = gen_standard("random_tree", n=rng.randint(2, 40), seed=rng.randrange(2**32))
        splitting = [x for x in sorted(S.vertices) if split_count(S, S.vertices, x) >= 2]
        for a, b in itertools.islice(itertools.combinations(splitting, 2), 500):
            split = verify_three_part_split(S, S.vertices, a, b)
            assert len(split.a_side) + len(split.middle) + len(split.b_side) + 2 == S.n


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 30), seed=st.integers(0, 2**32 - 1))
def test_flat_points_split_in_two(n, seed):
    S = gen_standard("random_tree", n=n, seed=seed)
    for x in sorted(S.vertices):
        if isinstance(is_locally_flat(S, S.vertices, x), FlatWitness):
            assert split_count(S, S.vertices, x) == 2


SMALL_SPACES = [
    *((f"path{n}", lambda n=n: gen_standard("path", n=n)) for n in range(3, 9)),
    *((f"cycle{n}", lambda n=n: gen_standard("cycle", n=n, radii=(0,))) for n in range(3, 9)),
    *((f"cycle{n}r1", lambda n=n: gen_standard("cycle", n=n)) for n in range(6, 9)),
    *((f"star{arms}x1", lambda arms=arms: gen_standard("star", arms=arms, length=1)) for arms in range(3, 8)),
    ("star3x2", lambda: gen_standard("star", arms=3, length=2)),
    ("theta2", lambda: gen_standard("theta", length=2)),
    ("theta3", lambda: gen_standard("theta", length=3)),
]


@pytest.mark.parametrize("make", [make for _, make in SMALL_SPACES], ids=[name for name, _ in SMALL_SPACES])
def test_sim_classes_match_oracle_on_small_spaces(make):
    report = check_separation_oracle(make())
    assert report.checked > 0
    assert report.passed, report.violations


@pytest.mark.parametrize("n", range(3, 7))
def test_sim_classes_match_oracle_on_every_small_tree(n):
    for sequence in itertools.product(range(n), repeat=n - 2):
        tree = nx.from_prufer_sequence(list(sequence))
        S = build_space(tree.edges(), BallBasis(radii=(1,)), points=n)
        report = check_separation_oracle(S)
        assert report.passed, (sequence, report.violations)
