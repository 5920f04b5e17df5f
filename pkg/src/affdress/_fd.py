"""Central-difference stencils on the (x, y) plane, shared by the Wirtinger
calculus and the affine-invariant extraction."""

from __future__ import annotations

import numpy as np

# Offsets (in units of the step) needed for all partials up to third order.
_OFFSETS = [
    (0, 0),
    (1, 0), (-1, 0), (2, 0), (-2, 0),
    (0, 1), (0, -1), (0, 2), (0, -2),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
]


def partials(f, x: float, y: float, h: float) -> dict:
    """Second-order central-difference partials of f(x, y) up to order 3.

    f may return a scalar or an ndarray; derivatives have the same shape.
    """
    v = {off: np.asarray(f(x + off[0] * h, y + off[1] * h), dtype=complex)
         for off in _OFFSETS}
    h2, h3 = h * h, h * h * h
    out = {"f": v[(0, 0)]}
    out["fx"] = (v[(1, 0)] - v[(-1, 0)]) / (2 * h)
    out["fy"] = (v[(0, 1)] - v[(0, -1)]) / (2 * h)
    out["fxx"] = (v[(1, 0)] - 2 * v[(0, 0)] + v[(-1, 0)]) / h2
    out["fyy"] = (v[(0, 1)] - 2 * v[(0, 0)] + v[(0, -1)]) / h2
    out["fxy"] = (v[(1, 1)] - v[(1, -1)] - v[(-1, 1)] + v[(-1, -1)]) / (4 * h2)
    out["fxxx"] = (v[(2, 0)] - 2 * v[(1, 0)] + 2 * v[(-1, 0)] - v[(-2, 0)]) / (2 * h3)
    out["fyyy"] = (v[(0, 2)] - 2 * v[(0, 1)] + 2 * v[(0, -1)] - v[(0, -2)]) / (2 * h3)
    out["fxxy"] = (
        v[(1, 1)] - 2 * v[(0, 1)] + v[(-1, 1)]
        - v[(1, -1)] + 2 * v[(0, -1)] - v[(-1, -1)]
    ) / (2 * h3)
    out["fxyy"] = (
        v[(1, 1)] - 2 * v[(1, 0)] + v[(1, -1)]
        - v[(-1, 1)] + 2 * v[(-1, 0)] - v[(-1, -1)]
    ) / (2 * h3)
    return out


def partials_richardson(f, x: float, y: float, h: float) -> dict:
    """Richardson-extrapolated partials: (4 D_{h/2} - D_h) / 3."""
    lo = partials(f, x, y, h)
    hi = partials(f, x, y, h / 2)
    out = {"f": hi["f"]}
    for key in lo:
        if key != "f":
            out[key] = (4 * hi[key] - lo[key]) / 3
    return out


def wirtinger_from_partials(p: dict) -> dict:
    """Wirtinger derivatives (d_z = (d_x - i d_y)/2) from a partials table."""
    out = {"f": p["f"]}
    out["f_z"] = 0.5 * (p["fx"] - 1j * p["fy"])
    out["f_zbar"] = 0.5 * (p["fx"] + 1j * p["fy"])
    out["f_zz"] = 0.25 * (p["fxx"] - 2j * p["fxy"] - p["fyy"])
    out["f_zzbar"] = 0.25 * (p["fxx"] + p["fyy"])
    out["f_zzz"] = 0.125 * (
        p["fxxx"] - 3j * p["fxxy"] - 3 * p["fxyy"] + 1j * p["fyyy"]
    )
    return out
