#!/usr/bin/env python3
"""Full sets, closures, and the split into a full pair.

A good set is *full* when nothing from the product of its own projections
can join it without creating a loop.  For good sets this is exactly
"deficiency = n - 1", where the deficiency counts coordinate values minus
points.  Every good set sits inside a full set with the same projections,
and a non-full one can even be completed so that the added part is itself
full -- the key to boundary constructions.
"""

import goodsets as gs

space = gs.Space.of(("x", (0, 1)), ("y", (0, 1)), ("z", (0, 1)))

# The even-parity quadruple: full although no two points are "adjacent".
t4 = gs.PointSet.of(space, [(1, 0, 1), (1, 1, 0), (0, 1, 1), (0, 0, 0)])
print("T4 deficiency:", t4.deficiency(), "(n-1 =", space.n - 1, ")")
print("T4 full?", gs.is_full(t4), "| by definition:", gs.is_full(t4, definitional=True))

# The main diagonal of the cube is good but far from full.
diagonal = gs.PointSet.of(space, [(0, 0, 0), (1, 1, 1)])
print("\ndiagonal deficiency:", diagonal.deficiency())
print("diagonal full?", gs.is_full(diagonal))

closure = gs.full_closure(diagonal)
print("full closure adds:", [p for p in closure if p not in diagonal])
print("closure deficiency:", closure.deficiency())

# The closure preserves projections; extending inside the whole cube instead
# grows a maximal good set covering every axis.
maximal = gs.extend_to_maximal(diagonal)
print("\nmaximal extension:", list(maximal))

# full_split finds a full superset whose complement is full too.
F = gs.full_split(diagonal)
remainder = F.difference(diagonal.points)
print("\nsplit superset:", list(F))
print("complement:", list(remainder), "full?", gs.is_full(remainder))
print("complement size equals deficiency - (n-1):", len(remainder))

# The complement's coordinates form a boundary that meets every axis, so the
# comb construction applies: an axis-parallel comb through one base point.
bound = remainder.coordinates()
rebuilt = gs.associated_full_set(diagonal, bound)
print("\ncomb completion:", list(rebuilt), "full?", gs.is_full(rebuilt))
