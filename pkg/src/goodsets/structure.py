"""Relatedness, geodesics, component partitions, and boundary construction.

Two points of a good set are *related* when some full subset contains both;
a minimal such subset is a *geodesic*, and it is unique.  Relatedness is
decided by subset search: iterative deepening on the cardinality, depth
first over the remaining points in canonical order.  Inside a good set every
subset is good, so fullness of a candidate is pure coordinate counting
(deficiency = n - 1), and a partial selection dies once its deficiency can
no longer come down to n - 1 with the adds that remain (each added point
lowers the deficiency by at most one).  The search is exponential in the
worst case; there is no known polynomial relatedness test for n > 2, and
desk-scale sets are the target.

Relatedness classes are full, they partition the set, and they drive the
boundary construction: per axis, chains of components sharing a value merge
projection values into equivalence classes; each class becomes a formal
variable; each component contributes the relation "its n incident class
variables sum to zero"; a basis chosen among the variables (the free columns
of an exact elimination) yields the boundary once the least value of each
basis class is picked.  Prescribing arbitrary values on the boundary then
makes the decomposition of every right-hand side unique, which is certified
by exact rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .goodness import is_full, is_good
from .linalg import IncidenceSystem, _rref
from .model import (
    Coordinate,
    PinSet,
    Point,
    PointSet,
    PreconditionError,
    VerificationError,
)

__all__ = [
    "BoundaryConstruction",
    "ComponentPartition",
    "EiClasses",
    "Geodesic",
    "boundary",
    "ei_classes",
    "full_component",
    "geodesic",
    "related",
    "related_components",
    "verify_boundary",
]


def _require_member(S: PointSet, p) -> Point:
    p = S.space.validate_point(p)
    if p not in S:
        raise PreconditionError(f"{p!r} is not a point of the set")
    return p


def _full_subsets_of_size(S: PointSet, required: tuple[Point, ...], k: int, find_all: bool):
    """Full k-subsets of the good set S containing the required points.

    With find_all=False the search stops at the first hit.
    """
    n = S.space.n
    coords_of = {p: tuple(enumerate(p)) for p in S}
    rest = [p for p in S if p not in required]
    counts: dict[Coordinate, int] = {}
    distinct = 0
    for p in required:
        for coord in coords_of[p]:
            if counts.get(coord, 0) == 0:
                distinct += 1
            counts[coord] = counts.get(coord, 0) + 1

    found: list[tuple[Point, ...]] = []
    chosen: list[Point] = []

    def dfs(start: int) -> bool:
        nonlocal distinct
        size = len(required) + len(chosen)
        deficiency = distinct - size
        if deficiency - (k - size) > n - 1:
            return False
        if size == k:
            if deficiency == n - 1:
                found.append(tuple(chosen))
                return not find_all
            return False
        if len(rest) - start < k - size:
            return False
        for idx in range(start, len(rest)):
            p = rest[idx]
            added = []
            for coord in coords_of[p]:
                if counts.get(coord, 0) == 0:
                    distinct += 1
                    added.append(coord)
                counts[coord] = counts.get(coord, 0) + 1
            chosen.append(p)
            stop = dfs(idx + 1)
            chosen.pop()
            for coord in coords_of[p]:
                counts[coord] -= 1
            for coord in added:
                if counts[coord] == 0:
                    distinct -= 1
            if stop:
                return True
        return False

    dfs(0)
    return found


def _geodesic_search(S: PointSet, x: Point, y: Point, find_all: bool):
    """Minimal-cardinality full subsets containing {x, y}, or [] if unrelated."""
    required = (x,) if x == y else (x, y)
    for k in range(len(required), len(S) + 1):
        hits = _full_subsets_of_size(S, required, k, find_all)
        if hits:
            return [required + extra for extra in hits]
    return []


@dataclass(frozen=True)
class Geodesic:
    """The unique smallest full subset of S containing both endpoints."""

    endpoints: tuple[Point, Point]
    points: PointSet

    @property
    def length(self) -> int:
        return len(self.points)


def related(S: PointSet, x, y) -> bool:
    """True iff some full subset of S contains both points."""
    if not is_good(S):
        raise PreconditionError("related requires a good set")
    x = _require_member(S, x)
    y = _require_member(S, y)
    if x == y:
        return True
    if S.deficiency() == S.space.n - 1:
        return True  # S itself is a full subset containing both
    return bool(_geodesic_search(S, x, y, find_all=False))


def geodesic(S: PointSet, x, y) -> Geodesic | None:
    """The unique minimal full subset containing x and y, or None if unrelated.

    At the minimal cardinality *all* qualifying subsets are enumerated and
    exactly one must exist; a violation is a fatal internal error.
    """
    if not is_good(S):
        raise PreconditionError("geodesic requires a good set")
    x = _require_member(S, x)
    y = _require_member(S, y)
    hits = _geodesic_search(S, x, y, find_all=True)
    if not hits:
        return None
    if len(hits) != 1:
        raise VerificationError(
            f"{len(hits)} distinct minimal full subsets join the pair; expected one"
        )
    return Geodesic((x, y), PointSet(S.space, hits[0]))


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of a good set into its (full) relatedness components."""

    components: tuple[PointSet, ...]
    index: dict

    def component_of(self, p) -> PointSet:
        return self.components[self.index[tuple(p)]]

    def __len__(self) -> int:
        return len(self.components)


def related_components(S: PointSet) -> ComponentPartition:
    """Pairwise relatedness, union-find closure, and the structural assertions.

    Relatedness is already transitive, so the closure is a safety net: any
    pair joined by the closure but missed by the pairwise search flags an
    internal error.  Every class must be full, and distinct classes may share
    at most n - 2 kinds of coordinates.
    """
    if not is_good(S):
        raise PreconditionError("related_components requires a good set")
    pts = list(S.points)
    m = len(pts)
    direct = [[False] * m for _ in range(m)]
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        direct[i][i] = True
        for j in range(i + 1, m):
            if related(S, pts[i], pts[j]):
                direct[i][j] = direct[j][i] = True
                parent[find(j)] = find(i)

    roots: dict[int, list[Point]] = {}
    for i in range(m):
        roots.setdefault(find(i), []).append(pts[i])
    for i in range(m):
        for j in range(i + 1, m):
            if find(i) == find(j) and not direct[i][j]:
                raise VerificationError(
                    "transitive closure added a pair the pairwise search missed"
                )

    components = tuple(
        PointSet(S.space, tuple(group))
        for _, group in sorted(roots.items())
    )
    index = {}
    for ci, comp in enumerate(components):
        for q in comp:
            index[q] = ci
        if not is_full(comp):
            raise VerificationError("a relatedness class is not full")
    # Distinct components may share at most n - 2 kinds of coordinates.
    for a in range(len(components)):
        for b in range(a + 1, len(components)):
            shared = sum(
                1
                for i in range(S.space.n)
                if set(components[a].projection(i)) & set(components[b].projection(i))
            )
            if shared > S.space.n - 2:
                raise VerificationError(
                    "distinct components share too many coordinate kinds"
                )
    return ComponentPartition(components, index)


def full_component(S: PointSet, x) -> PointSet:
    """The largest full subset of S containing x (its relatedness class)."""
    if not is_good(S):
        raise PreconditionError("full_component requires a good set")
    x = _require_member(S, x)
    members = [p for p in S if p == x or related(S, x, p)]
    comp = PointSet(S.space, tuple(members))
    if not is_full(comp):
        raise VerificationError("a relatedness class is not full")
    return comp


@dataclass(frozen=True)
class EiClasses:
    """Per axis, the partition of the projection values into chain classes.

    Two axis-i values fall in one class when a chain of components, adjacent
    ones overlapping on axis i, joins them.
    """

    classes_by_axis: tuple[tuple[tuple, ...], ...]

    def class_of(self, axis: int, label) -> tuple:
        for cls in self.classes_by_axis[axis]:
            if label in cls:
                return cls
        raise PreconditionError(f"label {label!r} not classified on axis {axis}")


def ei_classes(S: PointSet, partition: ComponentPartition | None = None) -> EiClasses:
    """Union-find per axis over the components' projections."""
    if partition is None:
        partition = related_components(S)
    space = S.space
    per_axis: list[tuple[tuple, ...]] = []
    for i in range(space.n):
        parent: dict = {v: v for v in S.projection(i)}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for comp in partition.components:
            values = comp.projection(i)
            for v in values[1:]:
                ra, rb = find(values[0]), find(v)
                if ra != rb:
                    parent[rb] = ra
        groups: dict = {}
        for v in S.projection(i):
            groups.setdefault(find(v), []).append(v)
        ordered = sorted(
            (tuple(sorted(g, key=lambda v: space.value_index(i, v))) for g in groups.values()),
            key=lambda cls: space.value_index(i, cls[0]),
        )
        per_axis.append(tuple(ordered))
    return EiClasses(tuple(per_axis))


@dataclass(frozen=True)
class BoundaryConstruction:
    """The generator/relation system behind a boundary, plus the boundary itself.

    generators: all (axis, class) pairs in canonical order -- the formal
    variables.  relations: one 0/1 row per component (its n incident class
    variables sum to zero).  Pivot generators of the exact elimination are
    dependent; the free ones form the basis, and the boundary takes the
    least value of each basis class.
    """

    partition: ComponentPartition
    cross_section: tuple[Point, ...]
    ei: EiClasses
    generators: tuple[tuple[int, tuple], ...]
    relations: tuple[tuple[int, ...], ...]
    pivot_generators: tuple[int, ...]
    basis_generators: tuple[int, ...]
    boundary: tuple[Coordinate, ...]

    def boundary_pins(self, values=None) -> PinSet:
        """Pin the boundary coordinates (at zero unless values are given)."""
        if values is None:
            return PinSet.zeros(self.boundary)
        return PinSet(tuple((c, values[c]) for c in self.boundary))


def boundary(S: PointSet, verify: bool = True) -> BoundaryConstruction:
    """Build a boundary of the good set S from the class/relation system.

    With `verify` (the default, meant for everything but hot production
    loops) the construction is certified: pinning the boundary must make the
    stacked system square of full rank, so any prescribed boundary values
    and any right-hand side admit exactly one solution.
    """
    if not is_good(S):
        raise PreconditionError("boundary requires a good set")
    partition = related_components(S)
    ei = ei_classes(S, partition)
    space = S.space

    generators: list[tuple[int, tuple]] = []
    gen_index: dict = {}
    for i in range(space.n):
        for cls in ei.classes_by_axis[i]:
            gen_index[(i, cls)] = len(generators)
            generators.append((i, cls))

    relations = []
    cross_section = tuple(comp.points[0] for comp in partition.components)
    for rep in cross_section:
        row = [0] * len(generators)
        for i in range(space.n):
            row[gen_index[(i, ei.class_of(i, rep[i]))]] = 1
        relations.append(tuple(row))

    R, pivots, _ = _rref(
        [[Fraction(x) for x in row] for row in relations], len(generators)
    )
    pivot_set = set(pivots)
    basis = tuple(j for j in range(len(generators)) if j not in pivot_set)
    bound = tuple((generators[j][0], generators[j][1][0]) for j in basis)

    construction = BoundaryConstruction(
        partition=partition,
        cross_section=cross_section,
        ei=ei,
        generators=tuple(generators),
        relations=tuple(relations),
        pivot_generators=tuple(pivots),
        basis_generators=basis,
        boundary=bound,
    )

    if verify:
        verify_boundary(S, construction)
    return construction


def verify_boundary(S: PointSet, construction: BoundaryConstruction):
    """Certify the boundary contract by exact rank; raise on any violation."""
    bound = construction.boundary
    seen_classes = set()
    for axis, label in bound:
        cls = construction.ei.class_of(axis, label)
        if (axis, cls) in seen_classes:
            raise VerificationError("boundary meets a class twice")
        seen_classes.add((axis, cls))
    if len(bound) != S.deficiency():
        raise VerificationError(
            f"boundary size {len(bound)} differs from deficiency {S.deficiency()}"
        )
    system = IncidenceSystem(S)
    rows = [[Fraction(x) for x in row] for row in system.rows]
    for coord in bound:
        unit = [Fraction(0)] * len(system.columns)
        unit[system.col_index[coord]] = Fraction(1)
        rows.append(unit)
    ncols = len(system.columns)
    if len(rows) != ncols:
        raise VerificationError("stacked boundary system is not square")
    _, pivots, _ = _rref(rows, ncols)
    if len(pivots) != ncols:
        raise VerificationError("boundary pins do not force a unique solution")
