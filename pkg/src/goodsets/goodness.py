"""Goodness and fullness decisions, closures, and full/complement splits.

A point set S is *good* when every function on it is a sum of univariate
functions, equivalently when its incidence rows are linearly independent,
equivalently when it contains no loop.  A good set is *full* when it is
maximal good inside the product of its own projections; for good sets this
is the same as deficiency(S) = n - 1, and both characterisations are
implemented so they can be played against each other in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    CircuitVector,
    IncidenceSystem,
    RowBasis,
    column_kernel,
    extract_circuit,
)
from .model import (
    PinSet,
    PointSet,
    PreconditionError,
    VerificationError,
)

__all__ = [
    "GoodnessVerdict",
    "Loop",
    "associated_full_set",
    "extend_to_maximal",
    "full_closure",
    "full_split",
    "is_full",
    "is_good",
]

# A loop is exactly a circuit of incidence vectors.
Loop = CircuitVector


@dataclass(frozen=True)
class GoodnessVerdict:
    """good=True means no loop exists; otherwise `loop` is the certificate."""

    good: bool
    loop: Loop | None

    def __bool__(self) -> bool:
        return self.good


def _dense_incidence(S: PointSet, columns, col_index, p) -> list[int]:
    row = [0] * len(columns)
    for i, label in enumerate(p):
        row[col_index[(i, label)]] = 1
    return row


def is_good(S: PointSet) -> GoodnessVerdict:
    """Decide goodness by rank; on failure return a verified loop certificate."""
    S.require_nonempty("goodness")
    columns = S.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    basis = RowBasis(len(columns))
    for p in S:
        if basis.add(_dense_incidence(S, columns, col_index, p)) is None:
            return GoodnessVerdict(False, extract_circuit(S.space, S.points))
    return GoodnessVerdict(True, None)


def is_full(S: PointSet, definitional: bool = False) -> bool:
    """Is S maximal good within the product of its own projections?

    Fast path: good and deficiency = n - 1.  The definitional check instead
    tests that every candidate of the projection product lies in the row
    span; the two must agree everywhere and tests enforce that.
    """
    S.require_nonempty("fullness")
    if not definitional:
        return bool(is_good(S)) and S.deficiency() == S.space.n - 1
    if not is_good(S):
        return False
    columns = S.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    basis = RowBasis(len(columns))
    for p in S:
        basis.add(_dense_incidence(S, columns, col_index, p))
    members = set(S.points)
    for candidate in S.product_points():
        if candidate in members:
            continue
        if not basis.contains(_dense_incidence(S, columns, col_index, candidate)):
            return False
    return True


def _require_good(S: PointSet, what: str):
    if not is_good(S):
        raise PreconditionError(f"{what} requires a good set")


def extend_to_maximal(S: PointSet) -> PointSet:
    """Grow S greedily to a maximal good set in the whole space.

    Candidates run in lexicographic order; one pass suffices because the row
    span only grows.  The result's projections cover every axis entirely.
    """
    _require_good(S, "extend_to_maximal")
    columns = S.space.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    basis = RowBasis(len(columns))
    for p in S:
        basis.add(_dense_incidence(S, columns, col_index, p))
    members = set(S.points)
    for candidate in S.space.all_points():
        if candidate in members:
            continue
        if basis.add(_dense_incidence(S, columns, col_index, candidate)) is not None:
            members.add(candidate)
    result = PointSet(S.space, tuple(members))
    for i in range(S.space.n):
        if set(result.projection(i)) != set(S.space.axes[i].values):
            raise VerificationError("maximal extension does not cover an axis")
    return result


def full_closure(S: PointSet) -> PointSet:
    """The full set over S's own projections, grown lexicographically.

    Projections are preserved; the loop stops exactly when deficiency
    reaches n - 1.
    """
    _require_good(S, "full_closure")
    columns = S.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    basis = RowBasis(len(columns))
    for p in S:
        basis.add(_dense_incidence(S, columns, col_index, p))
    members = set(S.points)
    target_rank = len(columns) - (S.space.n - 1)
    for candidate in S.product_points():
        if basis.rank == target_rank:
            break
        if candidate in members:
            continue
        if basis.add(_dense_incidence(S, columns, col_index, candidate)) is not None:
            members.add(candidate)
    result = PointSet(S.space, tuple(members))
    if result.deficiency() != S.space.n - 1:
        raise VerificationError("full closure did not reach deficiency n-1")
    return result


def _first_addable(S: PointSet) -> tuple:
    """First product candidate (lexicographic) whose vector leaves the row span."""
    columns = S.coordinates()
    col_index = {c: j for j, c in enumerate(columns)}
    basis = RowBasis(len(columns))
    for p in S:
        basis.add(_dense_incidence(S, columns, col_index, p))
    members = set(S.points)
    for candidate in S.product_points():
        if candidate in members:
            continue
        if not basis.contains(_dense_incidence(S, columns, col_index, candidate)):
            return candidate
    raise PreconditionError("set is already full")


def full_split(S: PointSet) -> PointSet:
    """Return a full F containing the good, non-full S with F - S full too.

    F keeps S's projections and |F - S| = deficiency(S) - (n - 1).  Each
    round fixes the first point of F - S, takes a nontrivial homogeneous
    solution pinned to zero at that point's first n - 1 coordinates, and
    swaps one coordinate of the fixed point to a value where the solution is
    nonzero; the new point lowers the deficiency by exactly one.
    """
    _require_good(S, "full_split")
    if is_full(S):
        raise PreconditionError("full_split requires a set that is not full")

    n = S.space.n
    F = S.union([_first_addable(S)])
    while F.deficiency() > n - 1:
        extra = F.difference(S.points)
        x0 = extra.points[0]
        pins = PinSet.zeros([(i, x0[i]) for i in range(n - 1)])
        kernel = column_kernel(IncidenceSystem(F), pins)
        if not kernel:
            raise VerificationError("set not full but pinned kernel is trivial")
        g = kernel[0]
        swap = None
        for coord in F.coordinates():
            if g.get(coord, 0) != 0:
                swap = coord
                break
        if swap is None:
            raise VerificationError("nontrivial kernel vector with empty support")
        j, value = swap
        new_point = tuple(value if i == j else x0[i] for i in range(n))
        if new_point in F:
            raise VerificationError("split construction produced an existing point")
        before = F.deficiency()
        F = F.union([new_point])
        if F.deficiency() != before - 1:
            raise VerificationError("split step did not lower deficiency by one")

    if not is_full(F):
        raise VerificationError("split result is not full")
    remainder = F.difference(S.points)
    if not is_full(remainder):
        raise VerificationError("split remainder is not full")
    if F.projections() != S.projections():
        raise VerificationError("split changed the projections")
    return F


def associated_full_set(S: PointSet, boundary_coords) -> PointSet:
    """Adjoin the axis-parallel comb through the least boundary values.

    Given a boundary B with B_i = B on axis i nonempty for every axis, the
    comb R = union_i {b_1} x ... x B_i x ... x {b_n} (b_i the least element
    of B_i) is full, and F = S union R is full with S's projections.  Both
    facts are verified here; failure signals a bug upstream, not bad input.
    """
    S.require_nonempty("associated_full_set")
    _require_good(S, "associated_full_set")
    n = S.space.n
    by_axis: dict[int, list] = {i: [] for i in range(n)}
    for coord in boundary_coords:
        axis, label = int(coord[0]), coord[1]
        S.space.value_index(axis, label)
        if label not in by_axis[axis]:
            by_axis[axis].append(label)
    for i in range(n):
        if not by_axis[i]:
            raise PreconditionError(
                f"boundary meets no value on axis {i}; the comb construction needs one per axis"
            )
        by_axis[i].sort(key=lambda v: S.space.value_index(i, v))

    base = tuple(by_axis[i][0] for i in range(n))
    comb = set()
    for i in range(n):
        for v in by_axis[i]:
            comb.add(tuple(v if k == i else base[k] for k in range(n)))
    comb_set = PointSet(S.space, tuple(comb))
    if not is_full(comb_set):
        raise VerificationError("comb through the boundary is not full")
    F = S.union(comb)
    if not is_full(F):
        raise VerificationError("S plus comb is not full")
    if F.projections() != S.projections():
        raise VerificationError("comb changed the projections")
    return F
