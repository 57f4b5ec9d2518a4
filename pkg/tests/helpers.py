"""Shared test utilities: independent oracles and small fixtures."""
from __future__ import annotations

import itertools

import numpy as np


def grid_search_center(samples, p: float, step: float = 1e-6) -> float:
    """Brute-force minimiser of f(z) = sum |s - z|^p by staged grid
    refinement down to the given step.

    f is strictly convex, so the argmin over a grid of spacing s lies
    within s of the true minimiser and each refinement stage may shrink
    the bracket to the two cells around the grid argmin.
    """
    samples = np.asarray(samples, dtype=float)
    lo = float(samples.min())
    hi = float(samples.max())
    while True:
        s = max((hi - lo) / 2000.0, step)
        zs = np.arange(lo, hi + s, s)
        f = np.abs(samples[:, None] - zs[None, :]) ** p
        i = int(np.argmin(f.sum(axis=0)))
        if s <= step:
            return float(zs[i])
        lo = float(zs[max(i - 1, 0)])
        hi = float(zs[min(i + 1, len(zs) - 1)])


def brute_force_objective(values, assignments, centroids, weights, p: float) -> float:
    """Objective evaluated straight from its definition: the triple sum
    over clusters, member points, and features of w^p |x - z|^p."""
    total = 0.0
    k = centroids.shape[0]
    for l in range(k):
        for x in values[assignments == l]:
            for v in range(values.shape[1]):
                total += weights[l, v] ** p * abs(x[v] - centroids[l, v]) ** p
    return total


def best_label_agreement(labels_a, labels_b, k: int) -> float:
    """Fraction of points on which two labelings agree under the best
    permutation of cluster indices."""
    labels_a = np.asarray(labels_a)
    labels_b = np.asarray(labels_b)
    best = 0
    for perm in itertools.permutations(range(k)):
        mapped = np.array([perm[l] for l in labels_b])
        best = max(best, int(np.sum(labels_a == mapped)))
    return best / len(labels_a)


def two_blob_dataset(n_per_blob: int = 100, separation: float = 10.0, seed: int = 7):
    """Two spherical unit-variance blobs separated by `separation` sigma
    on both coordinates; returns (values, labels)."""
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, 1.0, (n_per_blob, 2))
    b = rng.normal(separation, 1.0, (n_per_blob, 2))
    values = np.vstack([a, b])
    labels = np.array([0] * n_per_blob + [1] * n_per_blob)
    return values, labels
