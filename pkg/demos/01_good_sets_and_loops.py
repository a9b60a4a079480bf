#!/usr/bin/env python3
"""Good sets and loop certificates.

A finite set S inside a product X_1 x ... x X_n is *good* when every function
f on S splits as f(x) = u_1(x_1) + ... + u_n(x_n).  Failure always has a
finite witness: a *loop*, a minimal set of points carrying nonzero integer
coefficients whose formal coordinatewise sum cancels.  This script walks the
classic small cases.
"""

import goodsets as gs

# Any set whose points share no coordinate at all is good: each equation
# touches fresh variables.
scattered = gs.PointSet.from_points([(1, 2, 3), (4, 5, 6), (7, 8, 9)])
print("scattered points good?", gs.is_good(scattered).good)

# Adding (1,5,9) keeps it good: four equations, nine unknowns, independent.
crossing = gs.PointSet.from_points([(1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 5, 9)])
print("with a crossing point?", gs.is_good(crossing).good)

# The 2x2 rectangle is the smallest loop: the alternating sum of its corners
# cancels every coordinate, so f must satisfy f(a,b)-f(a,d)-f(c,b)+f(c,d)=0.
rectangle = gs.PointSet.from_points([("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")])
verdict = gs.is_good(rectangle)
print("\nrectangle good?", verdict.good)
print("certificate:")
for point, coeff in zip(verdict.loop.points, verdict.loop.coefficients):
    print(f"  {coeff:+d} * {point}")

# An indicator function on a loop point is unsolvable, and the solver says so
# with an explicit row combination.
f = gs.FunctionTable.indicator(rectangle, ("a", "b"))
outcome = gs.solve_pinned(gs.IncidenceSystem(rectangle), f)
print("solve verdict for an indicator on the rectangle:", outcome.verdict)

# In three dimensions loops can carry coefficients other than +-1.  The
# four-point set below is good; adding the far corner creates a loop whose
# base point is counted twice.
base = gs.PointSet.from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
print("\ncorner set good?", gs.is_good(base).good)
extended = base.union([(1, 1, 1)])
verdict = gs.is_good(extended)
print("with (1,1,1) added?", verdict.good)
print("five-point loop:")
for point, coeff in zip(verdict.loop.points, verdict.loop.coefficients):
    print(f"  {coeff:+d} * {point}")

# Goodness is inherited by subsets, so a single loop poisons every superset.
print("\nevery subset of a good set is good; every superset of a loop is bad")
