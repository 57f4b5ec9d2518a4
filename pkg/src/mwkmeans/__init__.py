"""Minkowski weighted k-means: joint learning of cluster assignments,
per-feature Minkowski centres, and per-cluster feature weights, plus an
analytical layer (objective reformulations, bounds, weight laws) that
can be checked against the running algorithm."""

from .core import (
    ClusteringState,
    Dataset,
    DispersionMatrix,
    MwkConfig,
    RunReport,
    compute_dispersions,
    validate_dataset,
)
from .data import SyntheticSpec, generate, load_csv, range_normalise, save_csv
from .engine import (
    EngineEvent,
    assign_points,
    run,
    run_classic_kmeans,
    run_restarts,
    update_centroids,
)
from .geometry import (
    CenterSolveResult,
    center_gradient,
    center_objective,
    minkowski_center,
    weighted_minkowski_distance,
)
from .theory import (
    BoundsResult,
    geometric_mean,
    normalised_objective,
    objective_bounds,
    objective_via_dispersions,
    objective_via_power_means,
    power_mean,
)
from .weighting import (
    global_suppression_bound,
    pairwise_suppression_bound,
    update_weights,
    weight_ratio,
)

__all__ = [
    "BoundsResult",
    "CenterSolveResult",
    "ClusteringState",
    "Dataset",
    "DispersionMatrix",
    "EngineEvent",
    "MwkConfig",
    "RunReport",
    "SyntheticSpec",
    "assign_points",
    "center_gradient",
    "center_objective",
    "compute_dispersions",
    "generate",
    "geometric_mean",
    "global_suppression_bound",
    "load_csv",
    "minkowski_center",
    "normalised_objective",
    "objective_bounds",
    "objective_via_dispersions",
    "objective_via_power_means",
    "pairwise_suppression_bound",
    "power_mean",
    "range_normalise",
    "run",
    "run_classic_kmeans",
    "run_restarts",
    "save_csv",
    "update_centroids",
    "update_weights",
    "validate_dataset",
    "weight_ratio",
    "weighted_minkowski_distance",
]

__version__ = "0.1.0"
