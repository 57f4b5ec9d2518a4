"""Shared domain types for Minkowski weighted k-means.

All matrices are float64 numpy arrays, indexed 0-based: rows are points
or clusters, columns are features. Objects are frozen after construction
and their arrays are marked read-only, so they can be shared across
concurrent restarts without copying.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EmptyMatrixError,
    InvalidConfigError,
    NonFiniteError,
    RaggedRowsError,
)

# Exponents p <= 1 + P_MARGIN are rejected: the weight update divides by
# p - 1 and the centre loses uniqueness at p = 1.
P_MARGIN = 1e-9


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Dataset:
    """An n x m matrix of finite feature values.

    Labels, when present, are carried for external evaluation only and
    are never consulted by the algorithm.
    """

    values: np.ndarray
    feature_names: Optional[tuple[str, ...]] = None
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, dtype=float)))
        if self.feature_names is not None:
            object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if self.labels is not None:
            object.__setattr__(self, "labels", _freeze(np.asarray(self.labels)))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]


def validate_dataset(
    values,
    feature_names: Optional[Sequence[str]] = None,
    labels=None,
) -> Dataset:
    """Build a Dataset from a raw matrix, rejecting malformed input.

    Raises EmptyMatrixError, RaggedRowsError, or NonFiniteError naming
    the first offending cell in row-major order.
    """
    if isinstance(values, np.ndarray):
        arr = values
    else:
        rows = list(values)
        if rows:
            lengths = {len(r) for r in rows}
            if len(lengths) > 1:
                raise RaggedRowsError(f"rows have differing lengths: {sorted(lengths)}")
        arr = np.asarray(rows, dtype=float)
    if arr.size == 0:
        raise EmptyMatrixError("dataset must contain at least one row and one column")
    if arr.ndim != 2:
        raise RaggedRowsError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    arr = arr.astype(float)
    bad = ~np.isfinite(arr)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonFiniteError(int(row), int(col))
    if feature_names is not None and len(feature_names) != arr.shape[1]:
        raise RaggedRowsError("feature_names length does not match column count")
    if labels is not None and len(labels) != arr.shape[0]:
        raise RaggedRowsError("labels length does not match row count")
    return Dataset(values=arr, feature_names=feature_names, labels=labels)


@dataclass(frozen=True)
class MwkConfig:
    """Knobs for one clustering job. Validated on construction."""

    k: int
    p: float
    tol_objective: float = 1e-6
    max_iter: int = 100
    center_tol: float = 1e-10
    seed: int = 0
    restarts: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise InvalidConfigError(f"k must be >= 1, got {self.k}")
        if not self.p > 1.0 + P_MARGIN:
            raise InvalidConfigError(
                f"p must exceed 1 (got p={self.p}); the weight update and the "
                f"unique Minkowski centre both require p > 1"
            )
        if self.tol_objective < 0:
            raise InvalidConfigError("tol_objective must be nonnegative")
        if self.max_iter < 1:
            raise InvalidConfigError("max_iter must be >= 1")
        if self.center_tol <= 0:
            raise InvalidConfigError("center_tol must be positive")
        if self.restarts < 1:
            raise InvalidConfigError("restarts must be >= 1")
        if self.seed < 0:
            raise InvalidConfigError("seed must be nonnegative")


@dataclass(frozen=True)
class ClusteringState:
    """Assignments, centroids, per-cluster feature weights, and the
    objective value of one run."""

    assignments: np.ndarray  # (n,) int cluster indices in [0, k)
    centroids: np.ndarray  # (k, m)
    weights: np.ndarray  # (k, m), each row on the simplex
    objective: float

    def __post_init__(self):
        object.__setattr__(self, "assignments", _freeze(np.asarray(self.assignments, dtype=int)))
        object.__setattr__(self, "centroids", _freeze(np.asarray(self.centroids, dtype=float)))
        object.__setattr__(self, "weights", _freeze(np.asarray(self.weights, dtype=float)))

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


@dataclass(frozen=True)
class DispersionMatrix:
    """k x m matrix of within-cluster per-feature dispersions:
    d[l, v] = sum over points i in cluster l of |x_iv - z_lv|^p."""

    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "d", _freeze(np.asarray(self.d, dtype=float)))

    @property
    def k(self) -> int:
        return self.d.shape[0]

    @property
    def m(self) -> int:
        return self.d.shape[1]


def compute_dispersions(
    values: np.ndarray, assignments: np.ndarray, centroids: np.ndarray, p: float
) -> DispersionMatrix:
    """Recompute the dispersion matrix from data, assignments, and centroids."""
    values = np.asarray(values, dtype=float)
    k, m = np.asarray(centroids).shape
    d = np.zeros((k, m))
    for l in range(k):
        members = values[assignments == l]
        if members.size:
            d[l] = np.sum(np.abs(members - centroids[l]) ** p, axis=0)
    return DispersionMatrix(d=d)


@dataclass(frozen=True)
class RunReport:
    """Everything observable about one run: the per-iteration objective
    trace, the final state, dispersions, objective bounds, and the
    objective linearly rescaled between those bounds."""

    objective_trace: tuple[float, ...]
    final_state: ClusteringState
    dispersions: DispersionMatrix
    bounds: Optional[tuple[float, float]]
    normalised_objective: Optional[float]
    iterations: int
    converged: bool
    # Iterations where an empty cluster was reseeded; the objective may
    # rise across these, so the monotone-trace guarantee excludes them.
    repair_iterations: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "objective_trace", tuple(float(v) for v in self.objective_trace))
        object.__setattr__(self, "repair_iterations", tuple(int(i) for i in self.repair_iterations))
