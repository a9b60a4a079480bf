"""Shared helpers for the test suite: builders, generators, and oracles.

The oracles here stay independent of the code paths they check: incidence
rows are rebuilt from the encoding's definition, rank/null-space questions go
through sympy, and the n = 2 statements use a union-find over the bipartite
multigraph rather than any linear algebra.
"""

from fractions import Fraction

import goodsets as gs


def int_space(sizes) -> gs.Space:
    """Axes named x1..xn with integer labels 0..size-1."""
    return gs.Space.of(
        *((f"x{i+1}", tuple(range(s))) for i, s in enumerate(sizes))
    )


def pset(points, sizes=None) -> gs.PointSet:
    if sizes is None:
        return gs.PointSet.from_points(points)
    return gs.PointSet.of(int_space(sizes), points)


def cube_set(points) -> gs.PointSet:
    return gs.PointSet.of(int_space((2, 2, 2)), points)


T4 = [(1, 0, 1), (1, 1, 0), (0, 1, 1), (0, 0, 0)]
E5 = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]
E5_PLUS = E5 + [(1, 1, 1)]
DIAGONAL = [(0, 0, 0), (1, 1, 1)]
RECTANGLE = [("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")]


# ---------------------------------------------------------------------------
# Random generators (seeded by the caller; inputs only, never the oracle).


def random_space(rng, n_choices=(2, 3, 4), max_axis=4) -> gs.Space:
    n = rng.choice(list(n_choices))
    return int_space(tuple(rng.randint(1, max_axis) for _ in range(n)))


def random_point_set(rng, space, max_points) -> gs.PointSet:
    product = list(space.all_points())
    rng.shuffle(product)
    k = rng.randint(1, min(max_points, len(product)))
    return gs.PointSet.of(space, product[:k])


def random_good_set(rng, space, max_points) -> gs.PointSet:
    """Greedy independent picks from a shuffled product, random target size.

    Stopping at a random size keeps non-full sets in the mix; running the
    greedy to saturation would always produce maximal (hence full) sets.
    """
    product = list(space.all_points())
    rng.shuffle(product)
    target = rng.randint(1, max_points)
    chosen = []
    for p in product:
        if len(chosen) >= target:
            break
        candidate = gs.PointSet.of(space, chosen + [p])
        if gs.is_good(candidate):
            chosen.append(p)
    return gs.PointSet.of(space, chosen)


def random_fraction(rng, span=9, max_den=7) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_decomposition(rng, S: gs.PointSet) -> gs.Decomposition:
    """Random rational tables on exactly the projections of S."""
    return gs.Decomposition(
        S.space,
        tuple(
            {v: random_fraction(rng) for v in S.projection(i)}
            for i in range(S.space.n)
        ),
    )


def random_function(rng, S: gs.PointSet) -> gs.FunctionTable:
    return gs.FunctionTable(S, {p: random_fraction(rng) for p in S})


def random_measure(rng, S: gs.PointSet) -> gs.FiniteMeasure:
    raw = {p: Fraction(rng.randint(1, 12)) for p in S}
    total = sum(raw.values())
    return gs.FiniteMeasure(S, {p: v / total for p, v in raw.items()})


# ---------------------------------------------------------------------------
# Independent oracles.


def oracle_rank(space, points) -> int:
    from sympy import Matrix

    return Matrix(_rows(space, points)).rank() if points else 0


def _rows(space, points):
    columns = [(i, v) for i, ax in enumerate(space.axes) for v in ax.values]
    index = {c: j for j, c in enumerate(columns)}
    rows = []
    for p in points:
        row = [0] * len(columns)
        for i, label in enumerate(p):
            row[index[(i, label)]] = 1
        rows.append(row)
    return rows


def oracle_independent(space, points) -> bool:
    return oracle_rank(space, points) == len(points)


def oracle_zero_marginal_dependency(space, points):
    """A nonzero rational vector c with sum_i c_i * row_i = 0, or None.

    Existence is exactly "some signed measure supported on the points has
    zero marginals on every axis".
    """
    from sympy import Matrix, Rational

    M = Matrix(_rows(space, points)).T
    null = M.nullspace()
    if not null:
        return None
    return [Fraction(str(Rational(x))) for x in null[0]]


def bipartite_is_forest(points) -> bool:
    """n = 2 goodness oracle: the point multigraph has no cycle."""
    parent = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in points:
        a, b = find(("L", x)), find(("R", y))
        if a == b:
            return False
        parent[a] = b
    return True


def bipartite_components(points):
    """n = 2 component oracle: group points by connected component."""
    parent = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in points:
        a, b = find(("L", x)), find(("R", y))
        if a != b:
            parent[a] = b
    groups = {}
    for p in points:
        groups.setdefault(find(("L", p[0])), set()).add(tuple(p))
    return sorted(frozenset(g) for g in groups.values())
