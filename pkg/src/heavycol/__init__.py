"""Heavy-column certificates for binary matrices, with desk-scale verification."""

from .matrix import (
    BinaryMatrix,
    MatrixProperties,
    column_weight,
    has_heavy_column,
    heavy_columns,
    is_heavy,
    matrix_properties,
    matrix_to_text,
    parse_matrix,
    permute_columns,
    serialize_report,
)
from .structure import (
    BranchSet,
    ReductionTrace,
    branch_set,
    conjugate_of,
    consistent_rows,
    find_unpaired,
    reduce,
    sequential_reduction,
)
from .algorithms import (
    AlgoConfig,
    RecursionStats,
    Verdict,
    Witness,
    run_a1,
    run_a2,
    run_memoized,
)
from .verification import (
    ScanReport,
    UniverseSpec,
    check_lemma1,
    check_reduction_claim,
    check_theorem1,
    check_theorem2,
    converse_scan,
    enumerate_universe,
    order_sensitivity_scan,
    remark_counterexamples,
)
from .profiling import GrowthTable, profile_family, snapshot_compare

__all__ = [
    "AlgoConfig",
    "BinaryMatrix",
    "BranchSet",
    "GrowthTable",
    "MatrixProperties",
    "RecursionStats",
    "ReductionTrace",
    "ScanReport",
    "UniverseSpec",
    "Verdict",
    "Witness",
    "branch_set",
    "check_lemma1",
    "check_reduction_claim",
    "check_theorem1",
    "check_theorem2",
    "converse_scan",
    "enumerate_universe",
    "order_sensitivity_scan",
    "profile_family",
    "remark_counterexamples",
    "snapshot_compare",
    "column_weight",
    "conjugate_of",
    "consistent_rows",
    "find_unpaired",
    "has_heavy_column",
    "heavy_columns",
    "is_heavy",
    "matrix_properties",
    "matrix_to_text",
    "parse_matrix",
    "permute_columns",
    "reduce",
    "run_a1",
    "run_a2",
    "run_memoized",
    "sequential_reduction",
    "serialize_report",
]
