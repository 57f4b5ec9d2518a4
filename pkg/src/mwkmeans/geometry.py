"""Weighted Minkowski distance and the 1-D Minkowski-centre solver.

For p > 1 the per-feature centre objective f(z) = sum_i |s_i - z|^p is
strictly convex, so its derivative is continuous and strictly increasing
and the minimiser is found by bisection on the derivative over
[min(samples), max(samples)]. All functions here are pure.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

DEFAULT_CENTER_TOL = 1e-10


@dataclass(frozen=True)
class CenterSolveResult:
    z: float  # minimiser, always within [min(samples), max(samples)]
    f_value: float  # objective at z
    iterations: int
    bracket_width: float  # final search-interval width, <= center_tol


def weighted_minkowski_distance(x, z, w, p: float) -> float:
    """Distance sum_v w_v^p * |x_v - z_v|^p (no outer p-th root)."""
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if not (x.shape == z.shape == w.shape):
        raise DimensionMismatchError(
            f"shape mismatch: x{x.shape}, z{z.shape}, w{w.shape}"
        )
    return float(np.sum(w**p * np.abs(x - z) ** p))


def center_objective(samples, p: float, z: float) -> float:
    """f(z) = sum_i |s_i - z|^p."""
    samples = np.asarray(samples, dtype=float)
    return float(np.sum(np.abs(samples - z) ** p))


def center_gradient(samples, p: float, z: float) -> float:
    """f'(z) = sum_i p * sign(z - s_i) * |z - s_i|^(p-1)."""
    samples = np.asarray(samples, dtype=float)
    d = z - samples
    return float(np.sum(p * np.sign(d) * np.abs(d) ** (p - 1)))


def minkowski_center(samples, p: float, center_tol: float = DEFAULT_CENTER_TOL) -> CenterSolveResult:
    """Unique minimiser of f(z) = sum_i |s_i - z|^p for p > 1.

    p = 2 takes the closed-form mean; otherwise bisection on f' until the
    bracket width drops below center_tol.
    """
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise ValueError("samples must be nonempty")
    if p == 2.0:
        z = float(np.mean(samples))
        return CenterSolveResult(z=z, f_value=center_objective(samples, p, z), iterations=0, bracket_width=0.0)
    lo = float(np.min(samples))
    hi = float(np.max(samples))
    iterations = 0
    while hi - lo > center_tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket at float resolution
            break
        g = center_gradient(samples, p, mid)
        if g < 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
    z = 0.5 * (lo + hi)
    return CenterSolveResult(
        z=z,
        f_value=center_objective(samples, p, z),
        iterations=iterations,
        bracket_width=hi - lo,
    )


def minkowski_center_columns(
    matrix: np.ndarray, p: float, center_tol: float = DEFAULT_CENTER_TOL
) -> np.ndarray:
    """Column-wise Minkowski centres of an (n, m) matrix.

    Same bisection as minkowski_center, run on all columns at once; used
    by the clustering engine where the centre is per-feature separable.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape[0] == 0:
        raise ValueError("matrix must have at least one row")
    if p == 2.0:
        return matrix.mean(axis=0)
    lo = matrix.min(axis=0).astype(float)
    hi = matrix.max(axis=0).astype(float)
    while True:
        width = hi - lo
        active = width > center_tol
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        # bracket exhausted at float resolution
        stuck = (mid <= lo) | (mid >= hi)
        active &= ~stuck
        if not active.any():
            break
        d = mid[None, :] - matrix
        g = np.sum(np.sign(d) * np.abs(d) ** (p - 1.0), axis=0)
        go_up = active & (g < 0.0)
        go_down = active & (g >= 0.0)
        lo = np.where(go_up, mid, lo)
        hi = np.where(go_down, mid, hi)
    return 0.5 * (lo + hi)
