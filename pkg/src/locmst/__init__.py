"""Minimum spanning trees under location-dependent power-weighted metrics.

The weight of an edge {u, v} is h(u, v)**alpha, where h is comparable to
the Euclidean distance (c1 * d <= h <= c2 * d) but may depend on where
the endpoints sit.  The package provides exact solvers with a fixed
deterministic tie rule, envelope constants for the expected weight under
i.i.d. sampling, planted configurations that force structural events,
and Monte Carlo scaling studies.
"""

from .geometry import (
    NoAdmissibleAError,
    Rect,
    Tiling,
    build_tiling,
    cell_of,
    cells_of,
    snake_index,
    snake_order,
)
from .sampling import (
    Density,
    PointSet,
    derive_rng,
    sample_binomial,
    sample_poisson,
)
from .weights import (
    DegenerateEdgeError,
    EquivalenceViolationError,
    HotspotLayout,
    WeightSpec,
    build_hotspot_layout,
    equivalence_audit,
    euclidean_spec,
    hotspot_spec,
    pair_weight,
    shifted_spec,
    spec_from_kind,
    weight_matrix,
)
from .mst import (
    DuplicatePointsError,
    InvalidKError,
    MstResult,
    SpecMissingPropertyError,
    TooLargeForBruteForceError,
    alpha_invariance_check,
    minimum_spanning_tree,
    mst_brute_force,
    mst_kruskal,
    mst_prim_dense,
    scale_check,
    scale_translate_check,
    sector_ratio_audit,
    sector_ratio_r0,
    translate_check,
    verify_cut_property,
    verify_path_criterion,
)
from .bounds import (
    BoundsResult,
    InvalidEpsError,
    InvalidPError,
    beta_low,
    beta_up,
    chernoff_bound,
    compute_bounds,
    geometric_moment,
    geometric_moment_upper_bound,
    lower_constant_at,
    upper_constant_at,
)
from .experiments import (
    EmptyPointSetError,
    GapStat,
    GeometryInfeasibleError,
    GoodSquareReport,
    Prop1Report,
    ScalingFit,
    StudyResult,
    gap_stat,
    gap_stat_monotonicity,
    good_square_probe,
    isolated_cell_count,
    lower_bound_stat,
    merge_bound_check,
    one_node_difference,
    prop1_demo,
    run_weight_study,
    scaling_experiment,
    tiled_upper_bound,
    variance_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsResult",
    "Density",
    "DegenerateEdgeError",
    "DuplicatePointsError",
    "EmptyPointSetError",
    "EquivalenceViolationError",
    "GapStat",
    "GeometryInfeasibleError",
    "GoodSquareReport",
    "HotspotLayout",
    "InvalidEpsError",
    "InvalidKError",
    "InvalidPError",
    "MstResult",
    "NoAdmissibleAError",
    "PointSet",
    "Prop1Report",
    "Rect",
    "ScalingFit",
    "SpecMissingPropertyError",
    "StudyResult",
    "Tiling",
    "TooLargeForBruteForceError",
    "WeightSpec",
    "alpha_invariance_check",
    "beta_low",
    "beta_up",
    "build_hotspot_layout",
    "build_tiling",
    "cell_of",
    "cells_of",
    "chernoff_bound",
    "compute_bounds",
    "derive_rng",
    "equivalence_audit",
    "euclidean_spec",
    "gap_stat",
    "gap_stat_monotonicity",
    "geometric_moment",
    "geometric_moment_upper_bound",
    "good_square_probe",
    "hotspot_spec",
    "isolated_cell_count",
    "lower_bound_stat",
    "lower_constant_at",
    "merge_bound_check",
    "minimum_spanning_tree",
    "mst_brute_force",
    "mst_kruskal",
    "mst_prim_dense",
    "one_node_difference",
    "pair_weight",
    "prop1_demo",
    "run_weight_study",
    "sample_binomial",
    "sample_poisson",
    "scale_check",
    "scale_translate_check",
    "scaling_experiment",
    "sector_ratio_audit",
    "sector_ratio_r0",
    "shifted_spec",
    "snake_index",
    "snake_order",
    "spec_from_kind",
    "tiled_upper_bound",
    "translate_check",
    "upper_constant_at",
    "variance_experiment",
    "verify_cut_property",
    "verify_path_criterion",
    "weight_matrix",
]
