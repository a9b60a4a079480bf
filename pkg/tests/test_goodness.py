import random

import pytest

import goodsets as gs
from util import (
    DIAGONAL,
    E5,
    E5_PLUS,
    RECTANGLE,
    T4,
    cube_set,
    int_space,
    oracle_independent,
    pset,
    random_good_set,
    random_point_set,
    random_space,
)


def test_is_good_example_seven():
    S = gs.PointSet.from_points([(1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 5, 9)])
    verdict = gs.is_good(S)
    assert verdict.good and verdict.loop is None


def test_is_good_e5_plus_certificate():
    S = cube_set(E5_PLUS)
    verdict = gs.is_good(S)
    assert not verdict.good
    gs.verify_circuit(S.space, verdict.loop)
    assert set(verdict.loop.points) <= set(S.points)
    assert cube_set(E5).deficiency() == 2
    assert gs.is_good(cube_set(E5)).good


def test_is_good_singleton():
    assert gs.is_good(cube_set([(1, 1, 0)])).good


def test_is_good_disjoint_coordinates():
    # No two points share any coordinate: always good.
    S = gs.PointSet.from_points([(1, 2, 3), (4, 5, 6), (7, 8, 9)])
    assert gs.is_good(S).good


def test_goodness_matches_solvability_of_indicators():
    # Definitional reading: good iff every indicator right-hand side solves.
    rng = random.Random(5)
    for _ in range(25):
        S = random_point_set(rng, random_space(rng, (2, 3), max_axis=3), 6)
        system = gs.IncidenceSystem(S)
        solvable = all(
            gs.solve_pinned(system, gs.FunctionTable.indicator(S, p)).verdict
            != "inconsistent"
            for p in S
        )
        assert solvable == gs.is_good(S).good
        assert gs.is_good(S).good == oracle_independent(S.space, S.points)


def test_goodness_monotone_under_subsets():
    rng = random.Random(9)
    for _ in range(20):
        S = random_good_set(rng, random_space(rng, (2, 3), max_axis=3), 7)
        pts = list(S.points)
        for _ in range(5):
            take = rng.sample(pts, rng.randint(1, len(pts)))
            assert gs.is_good(gs.PointSet.of(S.space, take)).good


def test_is_full_examples():
    assert gs.is_full(cube_set(T4))
    assert gs.is_full(cube_set(T4), definitional=True)
    assert gs.is_full(cube_set(E5))
    assert gs.is_full(cube_set(E5), definitional=True)
    assert not gs.is_full(cube_set(DIAGONAL))
    assert not gs.is_full(cube_set(DIAGONAL), definitional=True)


def test_is_full_fast_path_agrees_with_definitional():
    rng = random.Random(15)
    for _ in range(150):
        S = random_point_set(rng, random_space(rng, (2, 3), max_axis=3), 7)
        assert gs.is_full(S) == gs.is_full(S, definitional=True)


def test_extend_to_maximal_square():
    space = int_space((2, 2))
    S = gs.PointSet.of(space, [(0, 0)])
    M = gs.extend_to_maximal(S)
    assert M.points == ((0, 0), (0, 1), (1, 0))


def test_extend_to_maximal_fixpoint():
    space = int_space((2, 2))
    M = gs.PointSet.of(space, [(0, 0), (0, 1), (1, 0)])
    assert gs.extend_to_maximal(M).points == M.points


def test_extend_to_maximal_cube():
    space = int_space((2, 2, 2))
    M = gs.extend_to_maximal(gs.PointSet.of(space, [(0, 0, 0)]))
    assert len(M) == 4
    assert gs.is_good(M).good
    for i in range(3):
        assert set(M.projection(i)) == {0, 1}
    # Nothing else is addable.
    for candidate in space.all_points():
        if candidate not in M:
            assert not gs.is_good(M.union([candidate])).good


def test_full_closure_diagonal():
    F = gs.full_closure(cube_set(DIAGONAL))
    assert F.points == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 1, 1))
    assert gs.is_full(F, definitional=True)


def test_full_closure_fixpoints():
    T = cube_set(T4)
    assert gs.full_closure(T).points == T.points
    E = cube_set(E5)
    assert gs.full_closure(E).points == E.points


def test_full_closure_properties():
    rng = random.Random(21)
    for _ in range(25):
        S = random_good_set(rng, random_space(rng, (2, 3), max_axis=3), 6)
        F = gs.full_closure(S)
        assert set(S.points) <= set(F.points)
        assert F.projections() == S.projections()
        assert F.deficiency() == S.space.n - 1
        assert gs.full_closure(F).points == F.points


def test_full_closure_rejects_bad_sets():
    with pytest.raises(gs.PreconditionError):
        gs.full_closure(pset(RECTANGLE))


def test_full_split_diagonal():
    S = cube_set(DIAGONAL)
    F = gs.full_split(S)
    remainder = F.difference(S.points)
    assert len(F) == 4 and len(remainder) == 2
    assert gs.is_full(F) and gs.is_full(remainder)
    assert F.projections() == S.projections()


def test_full_split_two_disjoint_points_n2():
    S = gs.PointSet.from_points([("a", "b"), ("c", "d")])
    F = gs.full_split(S)
    remainder = F.difference(S.points)
    assert len(remainder) == 1
    assert gs.is_full(remainder)


def test_full_split_size_identity():
    rng = random.Random(27)
    done = 0
    while done < 25:
        S = random_good_set(rng, random_space(rng, (2, 3), max_axis=3), 6)
        if gs.is_full(S):
            continue
        F = gs.full_split(S)
        assert len(F.difference(S.points)) == S.deficiency() - (S.space.n - 1)
        done += 1


def test_full_split_preconditions():
    with pytest.raises(gs.PreconditionError):
        gs.full_split(pset(RECTANGLE))
    with pytest.raises(gs.PreconditionError):
        gs.full_split(cube_set(T4))


def test_associated_full_set_missing_axis():
    S = cube_set(DIAGONAL)
    construction = gs.boundary(S)
    # The computed boundary of the diagonal misses axis 0 entirely.
    assert all(axis != 0 for axis, _ in construction.boundary)
    with pytest.raises(gs.PreconditionError):
        gs.associated_full_set(S, construction.boundary)


def test_associated_full_set_comb():
    # A boundary meeting every axis: the coordinates of a full complement
    # (the class-basis construction never leaves a free axis-0 class, so it
    # cannot supply one).
    S = cube_set(DIAGONAL)
    F = gs.full_split(S)
    complement_coords = F.difference(S.points).coordinates()
    assert {axis for axis, _ in complement_coords} == {0, 1, 2}
    rebuilt = gs.associated_full_set(S, complement_coords)
    assert gs.is_full(rebuilt, definitional=True)
    assert rebuilt.projections() == S.projections()


def test_cross_is_full():
    # The axis-parallel cross through one point: a comb with maximal teeth.
    space = int_space((3, 3, 3))
    points = set()
    for i in range(3):
        for v in range(3):
            p = [0, 0, 0]
            p[i] = v
            points.add(tuple(p))
    cross = gs.PointSet.of(space, sorted(points))
    assert len(cross) == 7
    assert gs.is_good(cross).good
    assert gs.is_full(cross, definitional=True)
