"""Starved polytopes: hyperbolic polynomials sharing their first s coefficients.

H_s(f) is the set of monic degree-d hyperbolic polynomials whose first s
coefficients agree with f.  The package computes with the composition lattice
of root multiplicity arrangements, classifies strata as empty, point, or
full-dimensional, enumerates the occurring compositions, certifies
hyperbolicity through subdiscriminants, and exports boundary meshes.
"""

from .compositions import (
    Composition,
    covers_of,
    enumerate_compositions,
    iter_coarsenings,
    iter_refinements,
    join,
    leq,
    meet,
    upward_closure,
)
from .config import DEFAULT_CONFIG, DEFAULT_SEED, SolverConfig
from .errors import (
    ContinuationStalled,
    CostGuardExceeded,
    EmptyGrid,
    HypothesisViolation,
    IllConditioned,
    InconsistentTable,
    InternalInconsistency,
    InvalidRange,
    InvalidS,
    LengthMismatch,
    MismatchedDegree,
    NotHyperbolic,
    SolverError,
    StarvedPolyError,
    UsageError,
)
from .polynomials import (
    MonicPoly,
    RootMultiset,
    SymFuncVector,
    SymKind,
    composition_of,
    elem_to_power,
    from_roots,
    pi_u,
    power_sums_from_coeffs,
    power_to_elem,
    repeat_by,
    roots_of,
    truncate_coeffs,
)
from .stratify import (
    LatticeElement,
    LatticeReport,
    OccurrenceTable,
    StratumLattice,
    algorithm_occurring,
    brute_force_occurring,
    build_lattice,
    compute_U,
    occurrence_table,
    verify_lattice_properties,
)
from .subresultants import (
    Certificate,
    SubdiscriminantSequence,
    count_distinct_roots,
    hyperbolicity_certificate,
    subdiscriminants,
)
from .vandermonde import (
    OrderedChamber,
    StratumClass,
    StratumSolver,
    StratumTag,
    VandermondeSystem,
    build_system,
    classify_stratum,
    find_interior_point,
    jacobian,
    sample_stratum,
    solve_point_stratum,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Composition",
    "covers_of",
    "enumerate_compositions",
    "iter_coarsenings",
    "iter_refinements",
    "join",
    "leq",
    "meet",
    "upward_closure",
    "DEFAULT_CONFIG",
    "DEFAULT_SEED",
    "SolverConfig",
    "ContinuationStalled",
    "CostGuardExceeded",
    "EmptyGrid",
    "HypothesisViolation",
    "IllConditioned",
    "InconsistentTable",
    "InternalInconsistency",
    "InvalidRange",
    "InvalidS",
    "LengthMismatch",
    "MismatchedDegree",
    "NotHyperbolic",
    "SolverError",
    "StarvedPolyError",
    "UsageError",
    "MonicPoly",
    "RootMultiset",
    "SymFuncVector",
    "SymKind",
    "composition_of",
    "elem_to_power",
    "from_roots",
    "pi_u",
    "power_sums_from_coeffs",
    "power_to_elem",
    "repeat_by",
    "roots_of",
    "truncate_coeffs",
    "LatticeElement",
    "LatticeReport",
    "OccurrenceTable",
    "StratumLattice",
    "algorithm_occurring",
    "brute_force_occurring",
    "build_lattice",
    "compute_U",
    "occurrence_table",
    "verify_lattice_properties",
    "Certificate",
    "SubdiscriminantSequence",
    "count_distinct_roots",
    "hyperbolicity_certificate",
    "subdiscriminants",
    "OrderedChamber",
    "StratumClass",
    "StratumSolver",
    "StratumTag",
    "VandermondeSystem",
    "build_system",
    "classify_stratum",
    "find_interior_point",
    "jacobian",
    "sample_stratum",
    "solve_point_stratum",
]
