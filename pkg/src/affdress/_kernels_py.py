"""Pure-numpy grid kernels: vacuum-frame evaluation and line transport over
flat node arrays.  Semantics match ``_kernels_cy`` exactly; the compiled
module is preferred at import when available."""

from __future__ import annotations

import numpy as np

EPSILON = np.exp(1j * np.pi / 3)
_MUS = EPSILON ** (2 * np.arange(3))
_EIGVECS = np.array(
    [[1.0, 1.0, 1.0],
     [1.0, EPSILON**-2, EPSILON**2],
     [1.0, EPSILON**2, EPSILON**4]],
    dtype=complex,
).T
_PROJECTORS = np.array(
    [np.outer(_EIGVECS[:, k], np.conj(_EIGVECS[:, k])) / 3.0 for k in range(3)]
)


def frame_grid(x: np.ndarray, y: np.ndarray, w: complex) -> np.ndarray:
    """Vacuum frames E(z, zbar, w) for z = x + i y; returns (n, 3, 3)."""
    z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
    zb = np.conj(z)
    R = np.exp(np.multiply.outer(z, _MUS * w) + np.multiply.outer(zb, 1.0 / (_MUS * w)))
    return np.tensordot(R, _PROJECTORS, axes=(1, 0))


def transport_grid(
    x: np.ndarray, y: np.ndarray, w: complex, row: np.ndarray
) -> np.ndarray:
    """Row action (row @ E(z, zbar, w)) per node; returns (n, 3)."""
    z = np.asarray(x, dtype=float) + 1j * np.asarray(y, dtype=float)
    zb = np.conj(z)
    coeffs = (np.asarray(row, dtype=complex) @ _EIGVECS) / 3.0
    R = np.exp(np.multiply.outer(z, _MUS * w) + np.multiply.outer(zb, 1.0 / (_MUS * w)))
    return (R * coeffs) @ np.conj(_EIGVECS).T
