"""Ambiguity analysis of binary-image projections.

Given row and column sums of an unknown binary image, this package
quantifies how far the sums are from determining the image uniquely (the
ambiguity parameter), constructs two concrete solutions whose symmetric
difference provably reaches 2*alpha + 2, and ships a brute-force oracle
that enumerates all solutions at desk scale to audit every claimed bound.
"""

from .construct import (
    BatchContext,
    ConstructionTrace,
    DivergentPair,
    MoveRecord,
    RowChoicePolicy,
    apply_move,
    construct_f2,
    construct_f3,
    diverge,
)
from .core import (
    BinaryImage,
    ConstructionInvariantViolated,
    DiffCell,
    EmptyAmbiguity,
    IllegalMove,
    Inconsistent,
    NeighbourAnalysis,
    NotAmbiguous,
    ProjectionProfile,
    SymmetricDifference,
    TomographyError,
    TruncatedEnumeration,
    build_neighbour,
    canonicalize,
    is_consistent,
    neighbour_column_sums,
    symmetric_difference,
)
from .oracle import (
    DEFAULT_CAP,
    BoundCheck,
    EnumerationReport,
    InstanceFamily,
    SolutionSet,
    audit_bounds,
    enumerate_solutions,
    enumeration_report,
    make_family,
    max_pairwise_symdiff,
    random_consistent_profile,
    sharp_all_ones,
    uniform_k,
)
from .pairs import (
    ColumnPair,
    PairAnalysis,
    PairGroup,
    analyse_pairs,
    column_pairs,
    designate_final_columns,
    group_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "BatchContext",
    "BinaryImage",
    "BoundCheck",
    "ColumnPair",
    "ConstructionInvariantViolated",
    "ConstructionTrace",
    "DEFAULT_CAP",
    "DiffCell",
    "DivergentPair",
    "EmptyAmbiguity",
    "EnumerationReport",
    "IllegalMove",
    "Inconsistent",
    "InstanceFamily",
    "MoveRecord",
    "NeighbourAnalysis",
    "NotAmbiguous",
    "PairAnalysis",
    "PairGroup",
    "ProjectionProfile",
    "RowChoicePolicy",
    "SolutionSet",
    "SymmetricDifference",
    "TomographyError",
    "TruncatedEnumeration",
    "analyse_pairs",
    "apply_move",
    "audit_bounds",
    "build_neighbour",
    "canonicalize",
    "column_pairs",
    "construct_f2",
    "construct_f3",
    "designate_final_columns",
    "diverge",
    "enumerate_solutions",
    "enumeration_report",
    "group_pairs",
    "is_consistent",
    "make_family",
    "max_pairwise_symdiff",
    "neighbour_column_sums",
    "random_consistent_profile",
    "sharp_all_ones",
    "symmetric_difference",
    "uniform_k",
]
