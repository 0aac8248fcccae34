"""Landscape analysis of neural-architecture search spaces."""

__version__ = "0.1.0"

from .design_space import (
    CANONICAL_NAMES,
    DesignSpace,
    EvaluatedDoe,
    ParameterSpec,
    builtin_space,
    reduce_range,
    rescale_to_box,
    unscale_from_box,
)
from .sampling import BootstrapPlan, DoePlan, bootstrap_indices, lhs_sample
from .ela_features import (
    FEATURE_NAMES,
    IcSettings,
    LandscapeFeatures,
    MinimizationSample,
    compute_all,
    orient_for_minimization,
)
from .bbob import BbobInstance, bbob_feature_table, make_instance
from .analysis import knn_distance_stats, pearson_correlations, top_k_densities
from .clustering import Dendrogram, classical_mds, cut, hierarchical_cluster

__all__ = [
    "CANONICAL_NAMES",
    "FEATURE_NAMES",
    "BbobInstance",
    "BootstrapPlan",
    "Dendrogram",
    "DesignSpace",
    "DoePlan",
    "EvaluatedDoe",
    "IcSettings",
    "LandscapeFeatures",
    "MinimizationSample",
    "ParameterSpec",
    "bbob_feature_table",
    "bootstrap_indices",
    "builtin_space",
    "classical_mds",
    "compute_all",
    "cut",
    "hierarchical_cluster",
    "knn_distance_stats",
    "lhs_sample",
    "make_instance",
    "orient_for_minimization",
    "pearson_correlations",
    "reduce_range",
    "rescale_to_box",
    "top_k_densities",
    "unscale_from_box",
]
