"""Robust Schur stability of matrix segments and rank-one matrix polytopes."""

from .errors import (
    DimensionError,
    EigenSolverError,
    IllConditioned,
    NotRankOneStructured,
    PreconditionViolated,
    SegstabError,
    StructureCheckFailed,
    VerificationError,
)
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    bialternate_product,
    characteristic_polynomial,
    companion_from_quadratic,
    eigenvalues,
    index_pairs,
    solve_left,
    solve_right,
)
from .oracle import SampleVerdict, SamplingReport, eigen_locus, sample_polytope, sample_segment
from .polytope import (
    Orientation,
    PolytopeVerdict,
    RankOnePolytope,
    charpoly_convex_combination,
    check_polytope,
    edge_F_matrices,
    rank_one_spectrum,
    validate_rank_one_structure,
)
from .segment import (
    Condition,
    DiskRegion,
    SegmentProblem,
    SegmentVerdict,
    Status,
    build_F,
    build_F_disk,
    build_M,
    check_segment,
    check_segment_disk,
    check_segment_metzler2x2,
    locate_crossing,
)
from .stability import (
    EigClass,
    PredicateResult,
    Verdict,
    has_negative_real_eigenvalue,
    has_real_eigenvalue_geq_one,
    is_metzler,
    is_neg_metzler,
    is_schur_stable,
)

__all__ = [
    "bialternate_product",
    "build_F",
    "build_F_disk",
    "build_M",
    "characteristic_polynomial",
    "charpoly_convex_combination",
    "check_polytope",
    "check_segment",
    "check_segment_disk",
    "check_segment_metzler2x2",
    "companion_from_quadratic",
    "Condition",
    "DEFAULT_TOL",
    "DimensionError",
    "DiskRegion",
    "edge_F_matrices",
    "EigClass",
    "eigen_locus",
    "EigenSolverError",
    "eigenvalues",
    "has_negative_real_eigenvalue",
    "has_real_eigenvalue_geq_one",
    "IllConditioned",
    "index_pairs",
    "is_metzler",
    "is_neg_metzler",
    "is_schur_stable",
    "locate_crossing",
    "NotRankOneStructured",
    "Orientation",
    "PolytopeVerdict",
    "PreconditionViolated",
    "PredicateResult",
    "rank_one_spectrum",
    "RankOnePolytope",
    "sample_polytope",
    "sample_segment",
    "SampleVerdict",
    "SamplingReport",
    "SegmentProblem",
    "SegmentVerdict",
    "SegstabError",
    "solve_left",
    "solve_right",
    "Status",
    "StructureCheckFailed",
    "ToleranceConfig",
    "validate_rank_one_structure",
    "Verdict",
    "VerificationError",
]

__version__ = "0.1.0"
