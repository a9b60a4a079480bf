#!/usr/bin/env python3
"""Simplicial measures: extreme points among measures with fixed marginals.

A probability measure is simplicial when no other measure shares its
one-dimensional marginals in both directions of a perturbation.  On finite
sets this is a statement about the support: a loop in the support gives a
signed perturbation with zero marginals, while a good support admits none.
This is the finite heart of transportation-polytope vertex characterisation.
"""

from fractions import Fraction

import goodsets as gs

# The uniform measure on the rectangle loop is the centre of a segment: add
# or subtract epsilon times the alternating loop sign pattern and the
# marginals do not move.
rectangle = gs.PointSet.from_points([("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")])
mu = gs.FiniteMeasure.uniform(rectangle)
verdict = gs.is_simplicial(mu)
print("uniform on rectangle simplicial?", verdict.simplicial)
print("perturbation step:", verdict.epsilon)
for sign in (+1, -1):
    print(f"  mu {'+' if sign > 0 else '-'} eps*nu:", verdict.perturbed(mu, sign))

before = gs.marginals(mu)
plus = verdict.perturbed(mu, +1)
support = gs.PointSet.of(rectangle.space, list(plus))
after = gs.marginals(gs.FiniteMeasure(support, plus))
print("marginals preserved?", all(
    before.mass(i, v) == after.mass(i, v)
    for i in range(2)
    for v in rectangle.projection(i)
))

# A good support leaves no room to move: the uniform measure on T4 is an
# extreme point, and so is every other measure supported there.
t4 = gs.PointSet.from_points([(1, 0, 1), (1, 1, 0), (0, 1, 1), (0, 0, 0)])
print("\nuniform on T4 simplicial?", gs.is_simplicial(gs.FiniteMeasure.uniform(t4)).simplicial)
skewed = gs.FiniteMeasure(
    t4,
    {
        (0, 0, 0): Fraction(1, 2),
        (0, 1, 1): Fraction(1, 4),
        (1, 0, 1): Fraction(1, 8),
        (1, 1, 0): Fraction(1, 8),
    },
)
print("skewed on T4 simplicial?", gs.is_simplicial(skewed).simplicial)

# "Marginal uniqueness" packages the for-all-measures statement: it holds
# exactly on good supports.
print("\nT4 a set of marginal uniqueness?", gs.is_mu_set(t4))
print("rectangle a set of marginal uniqueness?", gs.is_mu_set(rectangle))
