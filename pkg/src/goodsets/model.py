"""Finite product spaces, point sets, and additive decompositions.

Everything in this package lives inside a finite product X_1 x ... x X_n of
pairwise-disjoint axes.  A point set S is *good* when every function on S
splits as u_1(x_1) + ... + u_n(x_n); deciding that, certifying failures, and
producing the split exactly are the jobs of the sibling modules.  This module
holds the data they all share:

* :class:`Space` -- the axes, their value labels, and the canonical orders
  that make every certificate deterministic.
* :class:`PointSet` -- a finite set of points, kept in canonical
  (coordinate-index lexicographic) order.
* :class:`FunctionTable` -- an exact rational right-hand side on a point set.
* :class:`Decomposition` -- per-axis value tables, the solution object.
* :class:`PinSet` -- prescribed coordinate values ("boundary conditions").

All scalars are :class:`fractions.Fraction`; nothing is ever rounded.  Every
type is immutable after construction and every operation is pure, so shared
instances are safe under concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Axis",
    "Coordinate",
    "Decomposition",
    "FunctionTable",
    "PinSet",
    "Point",
    "PointSet",
    "PreconditionError",
    "Space",
    "VerificationError",
    "as_fraction",
    "incidence_vector",
]

# A point is a plain tuple of labels, one per axis; a coordinate is
# (axis index, value label).  Labels are namespaced by their axis, so axes
# are disjoint even when labels repeat across them.
Point = tuple
Coordinate = tuple


class PreconditionError(ValueError):
    """An operation was called outside its stated preconditions."""


class VerificationError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def as_fraction(value) -> Fraction:
    """Coerce int / str / Fraction into an exact Fraction (floats rejected)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise PreconditionError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Axis:
    """One factor of the product: a name and its ordered, distinct labels."""

    name: str
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise PreconditionError(f"axis {self.name!r} has no values")
        if len(set(self.values)) != len(self.values):
            raise PreconditionError(f"axis {self.name!r} has duplicate values")


@dataclass(frozen=True)
class Space:
    """An ordered list of n >= 2 axes.

    Canonical orders used throughout: axes in declaration order, values in
    declaration order, points lexicographic by their per-axis value indices.
    """

    axes: tuple[Axis, ...]
    _value_index: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(self.axes))
        if len(self.axes) < 2:
            raise PreconditionError("a space needs at least two axes")
        if len({ax.name for ax in self.axes}) != len(self.axes):
            raise PreconditionError("axis names must be distinct")
        object.__setattr__(
            self,
            "_value_index",
            tuple({v: k for k, v in enumerate(ax.values)} for ax in self.axes),
        )

    @classmethod
    def of(cls, *axes: tuple[str, Iterable]) -> "Space":
        return cls(tuple(Axis(name, tuple(values)) for name, values in axes))

    @property
    def n(self) -> int:
        return len(self.axes)

    def value_index(self, axis: int, label) -> int:
        try:
            return self._value_index[axis][label]
        except (IndexError, KeyError):
            raise PreconditionError(
                f"label {label!r} not on axis {axis}"
            ) from None

    def axis_index(self, name: str) -> int:
        for i, ax in enumerate(self.axes):
            if ax.name == name:
                return i
        raise PreconditionError(f"no axis named {name!r}")

    def validate_point(self, point) -> Point:
        point = tuple(point)
        if len(point) != self.n:
            raise PreconditionError(f"point {point!r} has arity {len(point)}, want {self.n}")
        for i, label in enumerate(point):
            self.value_index(i, label)
        return point

    def point_key(self, point: Point) -> tuple[int, ...]:
        """Canonical sort key: per-axis value indices, axis-major."""
        return tuple(self.value_index(i, label) for i, label in enumerate(point))

    def coordinates(self) -> tuple[Coordinate, ...]:
        """All coordinates of the space in canonical (axis-major) order."""
        return tuple((i, v) for i, ax in enumerate(self.axes) for v in ax.values)

    def all_points(self) -> Iterator[Point]:
        """The whole product, lexicographic by value indices."""

        def rec(i):
            if i == self.n:
                yield ()
                return
            for v in self.axes[i].values:
                for rest in rec(i + 1):
                    yield (v,) + rest

        return rec(0)


def incidence_vector(space: Space, point: Point) -> dict:
    """Sparse 0/1 vector over the space's coordinates: 1 at each coordinate of the point.

    The evaluation functional of the decomposition equation: for a split u,
    sum_i u_i(p_i) is the pairing of u with this vector.
    """
    point = space.validate_point(point)
    return {(i, label): 1 for i, label in enumerate(point)}


@dataclass(frozen=True)
class PointSet:
    """A finite set of distinct points, stored in canonical order."""

    space: Space
    points: tuple[Point, ...]

    def __post_init__(self):
        seen = set()
        validated = []
        for p in self.points:
            p = self.space.validate_point(p)
            if p not in seen:
                seen.add(p)
                validated.append(p)
        validated.sort(key=self.space.point_key)
        object.__setattr__(self, "points", tuple(validated))

    @classmethod
    def of(cls, space: Space, points: Iterable) -> "PointSet":
        return cls(space, tuple(tuple(p) for p in points))

    @classmethod
    def from_points(cls, points: Iterable, axis_names: Iterable[str] | None = None) -> "PointSet":
        """Build a space from the points themselves (axis values sorted)."""
        pts = [tuple(p) for p in points]
        if not pts:
            raise PreconditionError("cannot infer a space from no points")
        n = len(pts[0])
        names = tuple(axis_names) if axis_names else tuple(f"x{i+1}" for i in range(n))
        axes = tuple(
            Axis(names[i], tuple(sorted({p[i] for p in pts}))) for i in range(n)
        )
        return cls(Space(axes), tuple(pts))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, point) -> bool:
        return tuple(point) in set(self.points)

    def require_nonempty(self, what: str = "operation"):
        if not self.points:
            raise PreconditionError(f"{what} needs a nonempty point set")

    def projection(self, axis: int) -> tuple:
        """Distinct axis values realised by the set, in declaration order."""
        if not 0 <= axis < self.space.n:
            raise PreconditionError(f"axis index {axis} out of range")
        present = {p[axis] for p in self.points}
        return tuple(v for v in self.space.axes[axis].values if v in present)

    def projections(self) -> tuple[tuple, ...]:
        return tuple(self.projection(i) for i in range(self.space.n))

    def coordinates(self) -> tuple[Coordinate, ...]:
        """Union of the projections as coordinates, axis-major canonical order."""
        return tuple(
            (i, v) for i in range(self.space.n) for v in self.projection(i)
        )

    def coordinate_count(self) -> int:
        return sum(len(self.projection(i)) for i in range(self.space.n))

    def deficiency(self) -> int:
        """sum_i |projection_i| - |S|; at least n-1 on good sets, = n-1 iff full."""
        self.require_nonempty("deficiency")
        return self.coordinate_count() - len(self.points)

    def subset(self, points: Iterable) -> "PointSet":
        pts = [tuple(p) for p in points]
        own = set(self.points)
        for p in pts:
            if p not in own:
                raise PreconditionError(f"{p!r} is not a point of this set")
        return PointSet(self.space, tuple(pts))

    def union(self, points: Iterable) -> "PointSet":
        return PointSet(self.space, self.points + tuple(tuple(p) for p in points))

    def difference(self, points: Iterable) -> "PointSet":
        drop = {tuple(p) for p in points}
        return PointSet(self.space, tuple(p for p in self.points if p not in drop))

    def product_points(self) -> Iterator[Point]:
        """The product of the projections, lexicographic by value indices."""
        projs = self.projections()

        def rec(i):
            if i == self.space.n:
                yield ()
                return
            for v in projs[i]:
                for rest in rec(i + 1):
                    yield (v,) + rest

        return rec(0)


@dataclass(frozen=True)
class FunctionTable:
    """An exact rational function given by its value at every point of a set."""

    domain: PointSet
    values: Mapping[Point, Fraction]

    def __post_init__(self):
        vals = {tuple(p): as_fraction(v) for p, v in self.values.items()}
        dom = set(self.domain.points)
        if set(vals) != dom:
            missing = dom - set(vals)
            extra = set(vals) - dom
            raise PreconditionError(
                f"function table must be total on its domain "
                f"(missing {len(missing)}, extraneous {len(extra)})"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, domain: PointSet) -> "FunctionTable":
        return cls(domain, {p: Fraction(0) for p in domain})

    @classmethod
    def indicator(cls, domain: PointSet, point) -> "FunctionTable":
        point = tuple(point)
        if point not in domain:
            raise PreconditionError(f"{point!r} is not in the domain")
        return cls(domain, {p: Fraction(1 if p == point else 0) for p in domain})

    @classmethod
    def from_decomposition(cls, domain: PointSet, d: "Decomposition") -> "FunctionTable":
        return cls(domain, {p: d.evaluate(p) for p in domain})

    def __call__(self, point) -> Fraction:
        return self.values[tuple(point)]


@dataclass(frozen=True)
class Decomposition:
    """Per-axis value tables u_1, ..., u_n with exact rational entries.

    Supports the linear-space operations the solution theory relies on, so
    tests can state linearity as actual arithmetic.
    """

    space: Space
    tables: tuple[Mapping, ...]

    def __post_init__(self):
        if len(self.tables) != self.space.n:
            raise PreconditionError("one table per axis required")
        frozen = []
        for i, table in enumerate(self.tables):
            clean = {}
            for label, v in table.items():
                self.space.value_index(i, label)
                clean[label] = as_fraction(v)
            frozen.append(clean)
        object.__setattr__(self, "tables", tuple(frozen))

    @classmethod
    def zero(cls, space: Space) -> "Decomposition":
        return cls(space, tuple({} for _ in range(space.n)))

    def value(self, axis: int, label) -> Fraction:
        try:
            return self.tables[axis][label]
        except KeyError:
            raise PreconditionError(
                f"decomposition has no value at axis {axis}, label {label!r}"
            ) from None

    def evaluate(self, point) -> Fraction:
        """sum_i u_i(p_i); error if any coordinate of the point is missing."""
        point = self.space.validate_point(point)
        return sum((self.value(i, label) for i, label in enumerate(point)), Fraction(0))

    def restricted_to(self, S: PointSet) -> "Decomposition":
        """Drop values outside the projections of S."""
        projs = S.projections()
        return Decomposition(
            self.space,
            tuple(
                {v: t[v] for v in projs[i] if v in t}
                for i, t in enumerate(self.tables)
            ),
        )

    def __add__(self, other: "Decomposition") -> "Decomposition":
        if other.space is not self.space and other.space != self.space:
            raise PreconditionError("decompositions live on different spaces")
        merged = []
        for a, b in zip(self.tables, other.tables):
            t = dict(a)
            for k, v in b.items():
                t[k] = t.get(k, Fraction(0)) + v
            merged.append(t)
        return Decomposition(self.space, tuple(merged))

    def scale(self, c) -> "Decomposition":
        c = as_fraction(c)
        return Decomposition(
            self.space,
            tuple({k: c * v for k, v in t.items()} for t in self.tables),
        )

    def __rmul__(self, c) -> "Decomposition":
        return self.scale(c)


@dataclass(frozen=True)
class PinSet:
    """Prescribed values at distinct coordinates, e.g. u_1(x) = 0."""

    pins: tuple[tuple[Coordinate, Fraction], ...]

    def __post_init__(self):
        clean = []
        seen = set()
        for coord, v in self.pins:
            coord = (int(coord[0]), coord[1])
            if coord in seen:
                raise PreconditionError(f"coordinate {coord!r} pinned twice")
            seen.add(coord)
            clean.append((coord, as_fraction(v)))
        object.__setattr__(self, "pins", tuple(clean))

    @classmethod
    def of(cls, mapping: Mapping) -> "PinSet":
        return cls(tuple(mapping.items()))

    @classmethod
    def zeros(cls, coords: Iterable[Coordinate]) -> "PinSet":
        return cls(tuple((c, Fraction(0)) for c in coords))

    def __len__(self) -> int:
        return len(self.pins)

    def __iter__(self):
        return iter(self.pins)

    def coordinates(self) -> tuple[Coordinate, ...]:
        return tuple(c for c, _ in self.pins)
