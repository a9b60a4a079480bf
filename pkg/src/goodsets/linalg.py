"""Exact rational linear algebra over the point/coordinate incidence system.

The decomposition equation u_1(x_1) + ... + u_n(x_n) = f(x) is linear with
0/1 coefficients: one row per point of S, one column per coordinate value in
the union of the projections.  Rank decisions drive every correctness claim
in this package, so elimination is done over `Fraction` with no rounding
anywhere.  Pins (prescribed coordinate values) enter as extra unit rows, not
by column elimination, which keeps the unique / underdetermined /
inconsistent reporting uniform.

Dependency certificates (loops) come out of :func:`extract_circuit`: a
deletion loop shrinks a dependent point list to a minimal one, whose
coefficient vector is then the unique normalized integer kernel element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .model import (
    Coordinate,
    Decomposition,
    FunctionTable,
    PinSet,
    Point,
    PointSet,
    PreconditionError,
    Space,
    VerificationError,
)

__all__ = [
    "CircuitVector",
    "IncidenceSystem",
    "LinearSolve",
    "PinRow",
    "RowBasis",
    "column_kernel",
    "extract_circuit",
    "in_span",
    "rank",
    "solve_pinned",
    "verify_circuit",
]

UNIQUE = "unique"
UNDERDETERMINED = "underdetermined"
INCONSISTENT = "inconsistent"


class RowBasis:
    """Incremental integer row-echelon basis with exact arithmetic.

    Rows are kept primitive (gcd 1) with their leading entry positive, one
    per pivot column.  `add` either absorbs an independent vector or reports
    dependence; nothing else mutates, so backtracking callers can undo with
    `remove_pivot`.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Eliminate `vec` against the basis; the residual is primitive or zero."""
        v = [int(x) for x in vec]
        if len(v) != self.ncols:
            raise PreconditionError("vector length does not match column count")
        j = 0
        while j < self.ncols:
            if v[j] == 0:
                j += 1
                continue
            row = self.pivot_rows.get(j)
            if row is None:
                break
            a, b = row[j], v[j]
            v = [b_k * a - row_k * b for b_k, row_k in zip(v, row)]
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            if g > 1:
                v = [x // g for x in v]
            j += 1
        if any(v):
            lead = next(i for i, x in enumerate(v) if x)
            if v[lead] < 0:
                v = [-x for x in v]
        return v

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence[int]) -> int | None:
        """Insert if independent; returns the new pivot column, else None."""
        r = self.reduce(vec)
        if not any(r):
            return None
        lead = next(i for i, x in enumerate(r) if x)
        self.pivot_rows[lead] = r
        return lead

    def remove_pivot(self, pivot: int):
        del self.pivot_rows[pivot]


@dataclass(frozen=True)
class PinRow:
    """Label of a stacked pin equation inside a witness combination."""

    coordinate: Coordinate


@dataclass(frozen=True)
class IncidenceSystem:
    """Rows: incidence vectors of the points of S.  Columns: coordinates of S."""

    point_set: PointSet
    columns: tuple[Coordinate, ...]
    col_index: dict
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, point_set: PointSet):
        point_set.require_nonempty("incidence system")
        columns = point_set.coordinates()
        col_index = {c: j for j, c in enumerate(columns)}
        rows = []
        for p in point_set:
            row = [0] * len(columns)
            for i, label in enumerate(p):
                row[col_index[(i, label)]] = 1
            rows.append(tuple(row))
        object.__setattr__(self, "point_set", point_set)
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "col_index", col_index)
        object.__setattr__(self, "rows", tuple(rows))

    @property
    def space(self) -> Space:
        return self.point_set.space

    @property
    def points(self) -> tuple[Point, ...]:
        return self.point_set.points


def _rref(rows: list[list[Fraction]], ncols: int, track: bool = False):
    """Reduced row echelon form; optionally track T with T * original = R."""
    m = len(rows)
    R = [list(map(Fraction, r)) for r in rows]
    T = [[Fraction(i == j) for j in range(m)] for i in range(m)] if track else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, m) if R[i][c] != 0), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        if track:
            T[r], T[pr] = T[pr], T[r]
        inv = R[r][c]
        if inv != 1:
            R[r] = [x / inv for x in R[r]]
            if track:
                T[r] = [x / inv for x in T[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                factor = R[i][c]
                R[i] = [a - factor * b for a, b in zip(R[i], R[r])]
                if track:
                    T[i] = [a - factor * b for a, b in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots, T


def _kernel_basis(R, pivots, ncols) -> list[list[Fraction]]:
    """Null-space basis from an RREF, one vector per free column, canonical order."""
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def rank(system: IncidenceSystem) -> int:
    """Exact rank of the incidence rows over the rationals."""
    _, pivots, _ = _rref([list(r) for r in system.rows], len(system.columns))
    return len(pivots)


def _stacked(system: IncidenceSystem, pins: PinSet | None):
    """Incidence rows plus one unit row per pin; labels identify row origins."""
    rows = [list(map(Fraction, r)) for r in system.rows]
    labels: list = list(system.points)
    rhs_pins: list[Fraction] = []
    if pins is not None:
        for coord, value in pins:
            j = system.col_index.get(coord)
            if j is None:
                raise PreconditionError(
                    f"pinned coordinate {coord!r} is not a column of the system"
                )
            unit = [Fraction(0)] * len(system.columns)
            unit[j] = Fraction(1)
            rows.append(unit)
            labels.append(PinRow(coord))
            rhs_pins.append(value)
    return rows, labels, rhs_pins


def column_kernel(system: IncidenceSystem, pins: PinSet | None = None) -> list[dict]:
    """Basis of {g on columns : M g = 0, g = 0 at pinned coordinates}.

    Pinning with value 0 is what the kernel of the pinned system means; the
    pin *values* are ignored here on purpose.
    """
    rows, _, _ = _stacked(system, pins)
    ncols = len(system.columns)
    R, pivots, _ = _rref(rows, ncols)
    return [
        {system.columns[j]: v for j, v in enumerate(vec) if v != 0}
        for vec in _kernel_basis(R, pivots, ncols)
    ]


@dataclass(frozen=True)
class LinearSolve:
    """Outcome of a pinned solve.

    verdict 'unique': decomposition set, kernel empty.
    verdict 'underdetermined': decomposition is the canonical solution with
    free variables at 0, kernel spans the remaining freedom.
    verdict 'inconsistent': witness is a rational combination of rows (points
    and pins) that sums to the zero functional but a nonzero right-hand side.
    """

    verdict: str
    decomposition: Decomposition | None
    kernel: tuple[dict, ...]
    witness: tuple[tuple[object, Fraction], ...] | None

    @property
    def unique(self) -> bool:
        return self.verdict == UNIQUE


def solve_pinned(
    system: IncidenceSystem, rhs: FunctionTable, pins: PinSet | None = None
) -> LinearSolve:
    """Solve M u = f subject to the pins, exactly.

    The three verdicts are mutually exclusive and exhaustive; for unique and
    underdetermined outcomes the returned decomposition reproduces `rhs`
    bit-exactly on every point.
    """
    if set(rhs.domain.points) != set(system.points):
        raise PreconditionError("right-hand side must be total on the system's points")
    rows, labels, rhs_pins = _stacked(system, pins)
    ncols = len(system.columns)
    b = [rhs(p) for p in system.points] + rhs_pins

    R, pivots, T = _rref(rows, ncols, track=True)
    c = [
        sum((T[i][k] * b[k] for k in range(len(b)) if T[i][k] != 0), Fraction(0))
        for i in range(len(rows))
    ]
    for i in range(len(pivots), len(rows)):
        if c[i] != 0:
            witness = tuple(
                (labels[k], T[i][k]) for k in range(len(b)) if T[i][k] != 0
            )
            return LinearSolve(INCONSISTENT, None, (), witness)

    solution = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        solution[pc] = c[r]

    tables: list[dict] = [dict() for _ in range(system.space.n)]
    for j, (axis, label) in enumerate(system.columns):
        tables[axis][label] = solution[j]
    decomposition = Decomposition(system.space, tuple(tables))

    if len(pivots) == ncols:
        return LinearSolve(UNIQUE, decomposition, (), None)
    kernel = tuple(
        {system.columns[j]: v for j, v in enumerate(vec) if v != 0}
        for vec in _kernel_basis(R, pivots, ncols)
    )
    return LinearSolve(UNDERDETERMINED, decomposition, kernel, None)


def in_span(system: IncidenceSystem, vector: Mapping[Coordinate, object]) -> bool:
    """True iff the vector is a rational combination of the incidence rows."""
    dense = [Fraction(0)] * len(system.columns)
    for coord, v in vector.items():
        j = system.col_index.get(coord)
        if j is None:
            raise PreconditionError(f"coordinate {coord!r} is not a column of the system")
        dense[j] = Fraction(v)
    R, pivots, _ = _rref([list(r) for r in system.rows], len(system.columns))
    residual = dense
    for r, pc in enumerate(pivots):
        coef = residual[pc]
        if coef != 0:
            residual = [a - coef * b for a, b in zip(residual, R[r])]
    return not any(residual)


@dataclass(frozen=True)
class CircuitVector:
    """A minimal dependent point list with its normalized integer coefficients.

    sum_i coefficients[i] * incidence_vector(points[i]) = 0 coordinatewise,
    no proper nonempty subset of the points supports such a relation, the
    coefficients are all nonzero with gcd 1, and the first one is positive.
    """

    points: tuple[Point, ...]
    coefficients: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)


def _incidence_rows(space: Space, points: Sequence[Point], columns, col_index):
    rows = []
    for p in points:
        row = [0] * len(columns)
        for i, label in enumerate(p):
            row[col_index[(i, label)]] = 1
        rows.append(row)
    return rows


def _dependent(space: Space, points: Sequence[Point], columns, col_index) -> bool:
    basis = RowBasis(len(columns))
    for row in _incidence_rows(space, points, columns, col_index):
        if basis.add(row) is None:
            return True
    return False


def extract_circuit(space: Space, points: Iterable[Point]) -> CircuitVector:
    """Shrink a dependent point list to a circuit and compute its coefficients.

    Deletion loop: scan the support in canonical order and drop any point
    whose removal keeps the rest dependent, until nothing is droppable.  The
    survivor is minimal, so the kernel of its transposed incidence matrix is
    one-dimensional and scales to a unique normalized integer vector.
    """
    support = sorted({space.validate_point(p) for p in points}, key=space.point_key)
    columns = space.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    if not _dependent(space, support, columns, col_index):
        raise PreconditionError("points are linearly independent; no circuit exists")

    changed = True
    while changed:
        changed = False
        for p in list(support):
            rest = [q for q in support if q != p]
            if _dependent(space, rest, columns, col_index):
                support = rest
                changed = True
                break

    # Kernel of the transpose: coefficients per point.
    rows_t = [
        [Fraction(row[j]) for row in _incidence_rows(space, support, columns, col_index)]
        for j in range(len(columns))
    ]
    R, pivots, _ = _rref(rows_t, len(support))
    kernel = _kernel_basis(R, pivots, len(support))
    if len(kernel) != 1:
        raise VerificationError(
            f"circuit kernel dimension {len(kernel)}; deletion loop is broken"
        )
    vec = kernel[0]
    denom_lcm = 1
    for v in vec:
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = [int(v * denom_lcm) for v in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x == 0 for x in ints):
        raise VerificationError("circuit coefficient vanished; support is not minimal")
    return CircuitVector(tuple(support), tuple(ints))


def verify_circuit(space: Space, circuit: CircuitVector):
    """Re-check a circuit: exact cancellation, minimality, normalization."""
    pts = circuit.points
    coeffs = circuit.coefficients
    if len(pts) != len(coeffs) or not pts:
        raise VerificationError("circuit points and coefficients do not align")
    sums: dict = {}
    for p, c in zip(pts, coeffs):
        if c == 0:
            raise VerificationError("circuit carries a zero coefficient")
        for coord in enumerate(p):
            sums[coord] = sums.get(coord, 0) + c
    if any(v != 0 for v in sums.values()):
        raise VerificationError("circuit coefficients do not cancel coordinatewise")
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    if g != 1 or coeffs[0] <= 0:
        raise VerificationError("circuit coefficients are not normalized")
    columns = space.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    for p in pts:
        rest = [q for q in pts if q != p]
        if rest and _dependent(space, rest, columns, col_index):
            raise VerificationError("circuit support is not minimal")
