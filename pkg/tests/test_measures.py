import random
from fractions import Fraction

import pytest

import goodsets as gs
from util import (
    RECTANGLE,
    T4,
    cube_set,
    oracle_zero_marginal_dependency,
    pset,
    random_measure,
    random_point_set,
    random_space,
)


def test_marginals_uniform_t4():
    m = gs.FiniteMeasure.uniform(cube_set(T4))
    marg = gs.marginals(m)
    for axis in range(3):
        assert marg.mass(axis, 0) == Fraction(1, 2)
        assert marg.mass(axis, 1) == Fraction(1, 2)


def test_marginals_point_mass():
    S = gs.PointSet.from_points([("a", "b", "c")])
    marg = gs.marginals(gs.FiniteMeasure.uniform(S))
    assert marg.mass(0, "a") == 1
    assert marg.mass(1, "b") == 1
    assert marg.mass(2, "c") == 1


def test_marginals_uniform_rectangle():
    marg = gs.marginals(gs.FiniteMeasure.uniform(pset(RECTANGLE)))
    for axis, labels in ((0, ("a", "c")), (1, ("b", "d"))):
        for v in labels:
            assert marg.mass(axis, v) == Fraction(1, 2)


def test_measure_validation():
    S = pset(RECTANGLE)
    with pytest.raises(gs.PreconditionError):
        gs.FiniteMeasure(S, {p: Fraction(1, 3) for p in S})
    with pytest.raises(gs.PreconditionError):
        gs.FiniteMeasure(S, {p: Fraction(0) for p in S})


def test_point_mass_simplicial():
    S = gs.PointSet.from_points([("a", "b", "c")])
    verdict = gs.is_simplicial(gs.FiniteMeasure.uniform(S))
    assert verdict.simplicial and verdict.loop is None


def test_uniform_rectangle_not_simplicial():
    m = gs.FiniteMeasure.uniform(pset(RECTANGLE))
    verdict = gs.is_simplicial(m)
    assert not verdict.simplicial
    assert sorted(verdict.loop.coefficients) == [-1, -1, 1, 1]
    assert verdict.epsilon == Fraction(1, 4)
    base = gs.marginals(m)
    for sign in (+1, -1):
        weights = verdict.perturbed(m, sign)
        assert all(v >= 0 for v in weights.values())
        assert sum(weights.values()) == 1
        support = gs.PointSet.of(m.support.space, list(weights))
        shifted = gs.marginals(gs.FiniteMeasure(support, weights))
        for axis in range(m.support.space.n):
            for v in m.support.projection(axis):
                assert shifted.mass(axis, v) == base.mass(axis, v)


def test_uniform_t4_simplicial():
    verdict = gs.is_simplicial(gs.FiniteMeasure.uniform(cube_set(T4)))
    assert verdict.simplicial
    # Independent confirmation: no signed measure with zero marginals.
    S = cube_set(T4)
    assert oracle_zero_marginal_dependency(S.space, S.points) is None


def test_mu_set_examples():
    assert gs.is_mu_set(cube_set(T4))
    assert not gs.is_mu_set(pset(RECTANGLE))
    assert gs.is_mu_set(gs.PointSet.from_points([("a", "b", "c")]))


def test_mu_set_certified_by_measures():
    rng = random.Random(103)
    for _ in range(20):
        S = random_point_set(rng, random_space(rng, (2, 3), max_axis=3), 6)
        claim = gs.is_mu_set(S)
        uniform = gs.is_simplicial(gs.FiniteMeasure.uniform(S))
        sampled = [gs.is_simplicial(random_measure(rng, S)) for _ in range(3)]
        if claim:
            assert uniform.simplicial and all(v.simplicial for v in sampled)
        else:
            assert not uniform.simplicial
            assert all(not v.simplicial for v in sampled)


def test_simplicial_matches_bruteforce_small():
    rng = random.Random(107)
    for _ in range(25):
        S = random_point_set(rng, random_space(rng, (2, 3), max_axis=2), 6)
        m = random_measure(rng, S)
        verdict = gs.is_simplicial(m)
        dependency = oracle_zero_marginal_dependency(S.space, S.points)
        assert verdict.simplicial == (dependency is None)
