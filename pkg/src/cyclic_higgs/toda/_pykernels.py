"""Numpy reference kernels for the Toda residual and its linearization.

Fields are float64 arrays of shape (d, N, N): one N x N periodic grid per
coordinate in the sigma-fixed Cartan basis. Per-root tables are W (m, d),
with W[a, j] = alpha_a(b_j), and P (m, d), the coordinates of the projected
coroot h_alpha_a.
"""

from __future__ import annotations

import numpy as np


def laplacian(u: np.ndarray, inv_h2: float) -> np.ndarray:
    """5-point periodic Laplacian along the last two axes."""
    return (np.roll(u, 1, -2) + np.roll(u, -1, -2) + np.roll(u, 1, -1) + np.roll(u, -1, -1)
            - 4.0 * u) * inv_h2


def nonlinear_terms(omega: np.ndarray, W: np.ndarray, c: np.ndarray) -> np.ndarray:
    """E[a] = c[a] * exp(-2 alpha_a(Omega)) on the grid, shape (m, N, N)."""
    pair = np.tensordot(W, omega, axes=(1, 0))
    return c[:, None, None] * np.exp(-2.0 * pair)


def residual(omega: np.ndarray, E: np.ndarray, P: np.ndarray, s: float, inv_h2: float,
             source: np.ndarray | None = None) -> np.ndarray:
    """(1/2) Lap(Omega) - s * sum_a E[a] P[a] - source."""
    out = 0.5 * laplacian(omega, inv_h2) - s * np.tensordot(P, E, axes=(0, 0))
    if source is not None:
        out -= source
    return out


def jacobian_apply(delta: np.ndarray, E: np.ndarray, W: np.ndarray, P: np.ndarray, s: float,
                   inv_h2: float) -> np.ndarray:
    """Linearized residual: (1/2) Lap(delta) + 2 s sum_a E[a] alpha_a(delta) P[a]."""
    pair = np.tensordot(W, delta, axes=(1, 0)) * E
    return 0.5 * laplacian(delta, inv_h2) + 2.0 * s * np.tensordot(P, pair, axes=(0, 0))


def metric_jacobian_apply(delta: np.ndarray, E: np.ndarray, W: np.ndarray, P: np.ndarray, s: float,
                          inv_h2: float, G: np.ndarray) -> np.ndarray:
    """-G J delta, the symmetric operator used by conjugate gradients."""
    return -np.tensordot(G, jacobian_apply(delta, E, W, P, s, inv_h2), axes=(1, 0))
