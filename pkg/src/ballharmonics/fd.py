"""Central finite-difference oracles used to cross-check analytic derivatives."""
from __future__ import annotations

import numpy as np


def fd_gradient(f, x, h: float = 1e-5) -> np.ndarray:
    """Second-order central-difference gradient of a scalar function."""
    x = np.asarray(x, dtype=float)
    n = x.size
    pts = np.repeat(x[None, :], 2 * n, axis=0)
    for i in range(n):
        pts[2 * i, i] += h
        pts[2 * i + 1, i] -= h
    vals = np.asarray(f(pts), dtype=float)
    return (vals[0::2] - vals[1::2]) / (2.0 * h)


def fd_jacobian(F, x, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian (m x n) of a vector function."""
    x = np.asarray(x, dtype=float)
    n = x.size
    pts = np.repeat(x[None, :], 2 * n, axis=0)
    for i in range(n):
        pts[2 * i, i] += h
        pts[2 * i + 1, i] -= h
    vals = np.atleast_2d(np.asarray(F(pts), dtype=float))
    return ((vals[0::2] - vals[1::2]) / (2.0 * h)).T


def fd_jacobian_batch(F, X, h) -> np.ndarray:
    """Jacobians at a batch of points, shape (N, n) -> (N, m, n).

    ``h`` may be scalar or per-point; evaluations are batched into a single
    call of F with 2*n*N points.
    """
    X = np.asarray(X, dtype=float)
    N, n = X.shape
    h = np.broadcast_to(np.asarray(h, dtype=float), (N,))
    pts = np.repeat(X, 2 * n, axis=0)
    for i in range(n):
        pts[2 * i :: 2 * n, i] += h
        pts[2 * i + 1 :: 2 * n, i] -= h
    vals = np.atleast_2d(np.asarray(F(pts), dtype=float))
    m = vals.shape[1]
    vals = vals.reshape(N, 2 * n, m)
    jac = (vals[:, 0::2, :] - vals[:, 1::2, :]) / (2.0 * h)[:, None, None]
    return np.swapaxes(jac, 1, 2)


def fd_laplacian(f, x, h: float = 1e-4) -> float:
    """Second-order finite-difference Laplacian of a scalar function."""
    x = np.asarray(x, dtype=float)
    n = x.size
    pts = np.repeat(x[None, :], 2 * n + 1, axis=0)
    for i in range(n):
        pts[2 * i, i] += h
        pts[2 * i + 1, i] -= h
    vals = np.asarray(f(pts), dtype=float)
    return float((np.sum(vals[: 2 * n]) - 2.0 * n * vals[-1]) / (h * h))
