"""Alternating minimisation over assignments, centroids, and weights.

One iteration runs assign -> centroids -> weights, in that order. Each
step minimises the objective in its own block, so over repair-free
iterations the objective never increases and the loop terminates. An
emptied cluster is reseeded with the point farthest (by the current
weighted distance) from its assigned centroid; such iterations may raise
the objective and are reported separately.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import theory
from .core import (
    ClusteringState,
    Dataset,
    DispersionMatrix,
    MwkConfig,
    RunReport,
    compute_dispersions,
)
from .errors import EmptyClusterError, InvalidConfigError
from .geometry import minkowski_center_columns
from .weighting import update_weights


@dataclass(frozen=True)
class EngineEvent:
    """Per-iteration observability record."""

    iteration: int
    objective: float
    n_reassigned: int
    n_empty_repaired: int


Observer = Callable[[EngineEvent], None]


def _values(dataset) -> np.ndarray:
    if isinstance(dataset, Dataset):
        return dataset.values
    return np.asarray(dataset, dtype=float)


def assign_points(dataset, centroids, weights, p: float) -> np.ndarray:
    """Nearest-centroid assignment under the weighted Minkowski
    distance; exact ties go to the lowest cluster index."""
    x = _values(dataset)
    centroids = np.asarray(centroids, dtype=float)
    weights = np.asarray(weights, dtype=float)
    k = centroids.shape[0]
    dists = np.empty((x.shape[0], k))
    wp = weights**p
    for l in range(k):
        dists[:, l] = np.abs(x - centroids[l]) ** p @ wp[l]
    return np.argmin(dists, axis=1)


def update_centroids(dataset, assignments, k: int, p: float, center_tol: float) -> np.ndarray:
    """Per-cluster, per-feature Minkowski centres.

    Raises EmptyClusterError if any cluster has no members; the caller
    must repair empties before updating centroids.
    """
    x = _values(dataset)
    z = np.empty((k, x.shape[1]))
    for l in range(k):
        members = x[np.asarray(assignments) == l]
        if members.shape[0] == 0:
            raise EmptyClusterError(l)
        z[l] = minkowski_center_columns(members, p, center_tol)
    return z


def _repair_empty(x, assignments, centroids, weights, p, k) -> int:
    """Reseed each empty cluster with the point farthest from its
    currently assigned centroid (restricted to clusters of size >= 2).
    Mutates assignments in place; returns the number of repairs."""
    repairs = 0
    wp = weights**p
    for l in range(k):
        if (assignments == l).any():
            continue
        counts = np.bincount(assignments, minlength=k)
        per_point = np.einsum(
            "iv,iv->i", np.abs(x - centroids[assignments]) ** p, wp[assignments]
        )
        eligible = counts[assignments] >= 2
        if not eligible.any():
            continue
        per_point = np.where(eligible, per_point, -np.inf)
        assignments[int(np.argmax(per_point))] = l
        repairs += 1
    return repairs


def _objective(weights: np.ndarray, dispersions: DispersionMatrix, p: float) -> float:
    return float(np.sum(weights**p * dispersions.d))


def run(dataset: Dataset, config: MwkConfig, observer: Optional[Observer] = None) -> RunReport:
    """One full clustering run from a seeded random initialisation.

    Initial weights are uniform 1/m; initial centroids are k distinct
    data points drawn without replacement. The loop stops when an
    iteration reassigns nothing, when the relative objective change
    drops below tol_objective, or after max_iter iterations.
    """
    x = dataset.values
    n, m = x.shape
    if config.k > n:
        raise InvalidConfigError(f"k={config.k} exceeds n={n}")
    rng = np.random.default_rng(config.seed)
    centroids = x[rng.choice(n, size=config.k, replace=False)].astype(float)
    weights = np.full((config.k, m), 1.0 / m)
    prev_assign: Optional[np.ndarray] = None
    trace: list[float] = []
    repair_iters: list[int] = []
    converged = False
    assignments = np.zeros(n, dtype=int)
    dispersions = DispersionMatrix(d=np.zeros((config.k, m)))

    for it in range(config.max_iter):
        assignments = assign_points(x, centroids, weights, config.p)
        n_reassigned = n if prev_assign is None else int(np.sum(assignments != prev_assign))
        repairs = _repair_empty(x, assignments, centroids, weights, config.p, config.k)
        centroids = update_centroids(x, assignments, config.k, config.p, config.center_tol)
        dispersions = compute_dispersions(x, assignments, centroids, config.p)
        weights = update_weights(dispersions, config.p)
        objective = _objective(weights, dispersions, config.p)
        trace.append(objective)
        if repairs:
            repair_iters.append(it)
        if observer is not None:
            observer(EngineEvent(it, objective, n_reassigned, repairs))
        prev_assign = assignments
        if repairs == 0 and n_reassigned == 0 and len(trace) > 1:
            converged = True
            break
        if len(trace) > 1:
            prev = trace[-2]
            rel = abs(prev - objective) / prev if prev > 0 else (0.0 if objective == 0 else np.inf)
            if rel <= config.tol_objective:
                converged = True
                break

    bounds = theory.objective_bounds(dispersions, config.p)
    final_objective = trace[-1]
    norm = theory.normalised_objective(final_objective, bounds)
    state = ClusteringState(
        assignments=assignments,
        centroids=centroids,
        weights=weights,
        objective=final_objective,
    )
    return RunReport(
        objective_trace=tuple(trace),
        final_state=state,
        dispersions=dispersions,
        bounds=(bounds.lower, bounds.upper),
        normalised_objective=norm,
        iterations=len(trace),
        converged=converged,
        repair_iterations=tuple(repair_iters),
    )


def run_restarts(
    dataset: Dataset, config: MwkConfig, observer: Optional[Observer] = None
) -> tuple[RunReport, list[RunReport]]:
    """config.restarts independent runs with seeds seed, seed+1, ...;
    returns (best run by final objective, all runs in seed order)."""
    reports = [
        run(dataset, dataclasses.replace(config, seed=config.seed + i), observer)
        for i in range(config.restarts)
    ]
    best = min(reports, key=lambda r: r.final_state.objective)
    return best, reports


def run_classic_kmeans(
    dataset: Dataset,
    k: int,
    seed: int = 0,
    tol: float = 1e-6,
    max_iter: int = 100,
) -> RunReport:
    """Baseline Lloyd's algorithm: squared Euclidean distance, mean
    centroids, no feature weights (the report carries uniform 1/m).

    The report's bounds and normalised objective are None: they are
    defined for the weighted objective only.
    """
    if k < 1:
        raise InvalidConfigError(f"k must be >= 1, got {k}")
    if max_iter < 1:
        raise InvalidConfigError("max_iter must be >= 1")
    x = dataset.values
    n, m = x.shape
    if k > n:
        raise InvalidConfigError(f"k={k} exceeds n={n}")
    rng = np.random.default_rng(seed)
    centroids = x[rng.choice(n, size=k, replace=False)].astype(float)
    uniform = np.full((k, m), 1.0 / m)
    prev_assign: Optional[np.ndarray] = None
    trace: list[float] = []
    repair_iters: list[int] = []
    converged = False
    assignments = np.zeros(n, dtype=int)

    for it in range(max_iter):
        dists = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        assignments = np.argmin(dists, axis=1)
        n_reassigned = n if prev_assign is None else int(np.sum(assignments != prev_assign))
        repairs = _repair_empty(x, assignments, centroids, uniform * m, 2.0, k)
        for l in range(k):
            centroids[l] = x[assignments == l].mean(axis=0)
        objective = float(np.sum((x - centroids[assignments]) ** 2))
        trace.append(objective)
        if repairs:
            repair_iters.append(it)
        prev_assign = assignments
        if repairs == 0 and n_reassigned == 0 and len(trace) > 1:
            converged = True
            break
        if len(trace) > 1:
            prev = trace[-2]
            rel = abs(prev - objective) / prev if prev > 0 else (0.0 if objective == 0 else np.inf)
            if rel <= tol:
                converged = True
                break

    dispersions = compute_dispersions(x, assignments, centroids, 2.0)
    state = ClusteringState(
        assignments=assignments,
        centroids=centroids,
        weights=uniform,
        objective=trace[-1],
    )
    return RunReport(
        objective_trace=tuple(trace),
        final_state=state,
        dispersions=dispersions,
        bounds=None,
        normalised_objective=None,
        iterations=len(trace),
        converged=converged,
        repair_iterations=tuple(repair_iters),
    )
