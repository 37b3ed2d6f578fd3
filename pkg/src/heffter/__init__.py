"""Square Heffter arrays H(n;4p+3): construction, verification, census and
biembedding development."""

from .core import (
    Cell,
    DiagonalSet,
    HeffterError,
    ParameterError,
    PartialSumProfile,
    SparseSquareArray,
    diagonal_cells,
    diagonal_prefix_sums,
    gaps_of,
    occupied_diagonals,
    partial_sums,
)
from .verify import (
    CellCycle,
    CheckResult,
    OrderingScheme,
    VerificationReport,
    check_compatible,
    check_gap_criterion,
    check_heffter,
    check_parity_necessary,
    check_simple,
    check_support_shifted,
    compose_cycle,
    natural_orderings,
)
from .construct import (
    ConstructionError,
    ExclusionError,
    FullConstruction,
    Params,
    SearchExhausted,
    ThreeDiagonalArray,
    alpha_conditions,
    build_support_shifted,
    build_three_diagonal,
    construct_full,
    default_maps,
    f_i_allowed,
    f_j_allowed,
    find_alpha,
    merge,
    merge_exclusion_set,
    shift_three_diagonal,
)
from .embed import (
    Embedding,
    Face,
    GuardrailError,
    SurfaceCertificate,
    base_faces,
    develop,
    verify_surface,
    write_faces,
)
from .census import (
    CensusEntry,
    CensusReport,
    EquivalenceWitness,
    derangements,
    embedding_lower_bound,
    enumerate_maps,
    equivalent,
    run_census,
    write_census_csv,
)
from .oracle import (
    BudgetExceeded,
    SearchBudget,
    brute_force_heffter,
    naive_compose_cycles,
    naive_distinct_partial_sums,
)

__version__ = "0.1.0"

__all__ = [
    "Cell",
    "DiagonalSet",
    "HeffterError",
    "ParameterError",
    "PartialSumProfile",
    "SparseSquareArray",
    "diagonal_cells",
    "diagonal_prefix_sums",
    "gaps_of",
    "occupied_diagonals",
    "partial_sums",
    "CellCycle",
    "CheckResult",
    "OrderingScheme",
    "VerificationReport",
    "check_compatible",
    "check_gap_criterion",
    "check_heffter",
    "check_parity_necessary",
    "check_simple",
    "check_support_shifted",
    "compose_cycle",
    "natural_orderings",
    "ConstructionError",
    "ExclusionError",
    "FullConstruction",
    "Params",
    "SearchExhausted",
    "ThreeDiagonalArray",
    "alpha_conditions",
    "build_support_shifted",
    "build_three_diagonal",
    "construct_full",
    "default_maps",
    "f_i_allowed",
    "f_j_allowed",
    "find_alpha",
    "merge",
    "merge_exclusion_set",
    "shift_three_diagonal",
    "Embedding",
    "Face",
    "GuardrailError",
    "SurfaceCertificate",
    "base_faces",
    "develop",
    "verify_surface",
    "write_faces",
    "CensusEntry",
    "CensusReport",
    "EquivalenceWitness",
    "derangements",
    "embedding_lower_bound",
    "enumerate_maps",
    "equivalent",
    "run_census",
    "write_census_csv",
    "BudgetExceeded",
    "SearchBudget",
    "brute_force_heffter",
    "naive_compose_cycles",
    "naive_distinct_partial_sums",
]
