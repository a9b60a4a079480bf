"""Good sets in finite products: decide, certify, and solve additive splits.

A finite subset S of X_1 x ... x X_n is *good* when every function on S is a
sum of univariate functions of the coordinates.  This package decides
goodness with exact rational arithmetic, produces certificates (loops for
failures; geodesics, boundaries, and full splits for structure), solves the
split equation under prescribed boundary values, and certifies extreme
points among measures with fixed marginals.
"""

from .goodness import (
    GoodnessVerdict,
    Loop,
    associated_full_set,
    extend_to_maximal,
    full_closure,
    full_split,
    is_full,
    is_good,
)
from .linalg import (
    CircuitVector,
    IncidenceSystem,
    LinearSolve,
    RowBasis,
    column_kernel,
    extract_circuit,
    in_span,
    rank,
    solve_pinned,
    verify_circuit,
)
from .measures import (
    FiniteMeasure,
    MarginalVector,
    SimplicialVerdict,
    is_mu_set,
    is_simplicial,
    marginals,
)
from .model import (
    Axis,
    Decomposition,
    FunctionTable,
    PinSet,
    PointSet,
    PreconditionError,
    Space,
    VerificationError,
    as_fraction,
    incidence_vector,
)
from .solve import (
    BoundDiagnostics,
    GeodesicMatrix,
    SolveReport,
    bound_diagnostics,
    geodesic_matrix,
    solve_componentwise,
    solve_direct,
    solve_via_geodesics,
    solve_with_boundary,
)
from .structure import (
    BoundaryConstruction,
    ComponentPartition,
    EiClasses,
    Geodesic,
    boundary,
    ei_classes,
    full_component,
    geodesic,
    related,
    related_components,
)

__version__ = "0.1.0"
