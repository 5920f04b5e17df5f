"""Numerical verification: Wirtinger finite differences, the Tzitzeica
residual, soliton tau-function oracles and grid comparison reports.

The tau symbol here is the soliton generating function, unrelated to the
reality-condition involution in :mod:`affdress.loopgroup`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _fd
from .core import (
    DegenerateParameters,
    ScalarGrid,
    SpecMismatch,
    TauZero,
)

TAU_ZERO_RTOL = 1e-6


@dataclass(frozen=True)
class FDSettings:
    step: float = 1e-4
    richardson: bool = True

    def __post_init__(self):
        if not (1e-6 <= self.step <= 1e-2):
            raise ValueError("step must lie in [1e-6, 1e-2]")


def wirtinger(f, z: complex, settings: FDSettings = FDSettings()):
    """Central-difference (f_z, f_zbar, f_zzbar) of a scalar function of z.

    Convention d_z = (d_x - i d_y)/2 with z = x + i y.
    """
    x, y = float(np.real(z)), float(np.imag(z))
    g = lambda a, b: f(a + 1j * b)
    table = (_fd.partials_richardson if settings.richardson else _fd.partials)(
        g, x, y, settings.step
    )
    w = _fd.wirtinger_from_partials(table)
    return w["f_z"], w["f_zbar"], w["f_zzbar"]


def tzitzeica_residual(h, z: complex, settings: FDSettings = FDSettings()) -> float:
    """|h_zzbar h - h_z h_zbar - h^3 + 1| at z for a real scalar field h."""
    h_z, h_zbar, h_zzbar = wirtinger(h, z, settings)
    h0 = complex(h(z))
    return float(abs(h_zzbar * h0 - h_z * h_zbar - h0**3 + 1.0))


def tzitzeica_residual_field(h_field, x, y, step: float = 1e-3, richardson: bool = True):
    """Vectorized residual of h(x, y) over arrays of sample points.

    ``h_field(x, y)`` must accept ndarray arguments; the stencil is evaluated
    in batch, which keeps closed-form pipelines fast on full grids.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)

    def residual_at(hh):
        f = {}
        for dx, dy in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]:
            f[(dx, dy)] = np.asarray(h_field(x + dx * hh, y + dy * hh), dtype=float)
        fx = (f[(1, 0)] - f[(-1, 0)]) / (2 * hh)
        fy = (f[(0, 1)] - f[(0, -1)]) / (2 * hh)
        lap = (
            f[(1, 0)] + f[(-1, 0)] + f[(0, 1)] + f[(0, -1)] - 4 * f[(0, 0)]
        ) / hh**2
        h0 = f[(0, 0)]
        h_z = 0.5 * (fx - 1j * fy)
        h_zbar = 0.5 * (fx + 1j * fy)
        return (0.25 * lap * h0 - h_z * h_zbar - h0**3 + 1.0).real

    if not richardson:
        return np.abs(residual_at(step))
    # Residual is quadratic in the FD error, so extrapolate the derivative
    # estimates per term: combine residuals built from extrapolated stencils.
    return np.abs(_richardson_residual(h_field, x, y, step))


def _richardson_residual(h_field, x, y, step):
    def derivs(hh):
        f = {}
        for dx, dy in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]:
            f[(dx, dy)] = np.asarray(h_field(x + dx * hh, y + dy * hh), dtype=float)
        fx = (f[(1, 0)] - f[(-1, 0)]) / (2 * hh)
        fy = (f[(0, 1)] - f[(0, -1)]) / (2 * hh)
        lap = (
            f[(1, 0)] + f[(-1, 0)] + f[(0, 1)] + f[(0, -1)] - 4 * f[(0, 0)]
        ) / hh**2
        return f[(0, 0)], fx, fy, lap

    h0, fx1, fy1, lap1 = derivs(step)
    _, fx2, fy2, lap2 = derivs(step / 2)
    fx = (4 * fx2 - fx1) / 3
    fy = (4 * fy2 - fy1) / 3
    lap = (4 * lap2 - lap1) / 3
    h_z = 0.5 * (fx - 1j * fy)
    h_zbar = 0.5 * (fx + 1j * fy)
    return (0.25 * lap * h0 - h_z * h_zbar - h0**3 + 1.0).real


@dataclass(frozen=True)
class SolitonParams:
    """One- or two-soliton data; s values may be complex (signs live in s)."""

    k1: complex
    s1: complex
    k2: complex | None = None
    s2: complex | None = None

    def __post_init__(self):
        if self.k1 == 0 or (self.k2 is not None and self.k2 == 0):
            raise DegenerateParameters("soliton wavenumbers must be nonzero")

    @property
    def is_two_soliton(self) -> bool:
        return self.k2 is not None


def _exponent(k: complex, z, s: complex):
    return k * z + 3.0 * np.conj(z) / k + s


def tau_one_soliton(z, p: SolitonParams):
    """tau = 1 - exp(k z + 3 zbar / k + s)."""
    return 1.0 - np.exp(_exponent(p.k1, z, p.s1))


def tau_one_soliton_h(z, p: SolitonParams):
    """Analytic h = 1 - 2 (ln tau)_zzbar = 1 + 6 E / (1 - E)^2 for tau = 1 - E."""
    E = np.exp(_exponent(p.k1, z, p.s1))
    tau = 1.0 - E
    _guard_tau(tau, np.abs(E))
    h = 1.0 + 6.0 * E / tau**2
    return h.real if np.ndim(h) else float(h.real)


def interaction_coefficient(k1: complex, k2: complex) -> complex:
    num = (k1 - k2) ** 2 * (k1**2 - k1 * k2 + k2**2)
    den = (k1 + k2) ** 2 * (k1**2 + k1 * k2 + k2**2)
    if den == 0:
        raise DegenerateParameters("k1 + k2 = 0 or k1^2 + k1 k2 + k2^2 = 0")
    return num / den


def tau_two_soliton(z, p: SolitonParams):
    """tau = 1 + E1 + E2 + gamma E1 E2 with the standard interaction factor."""
    if not p.is_two_soliton:
        raise DegenerateParameters("two-soliton oracle needs k2, s2")
    gamma = interaction_coefficient(p.k1, p.k2)
    E1 = np.exp(_exponent(p.k1, z, p.s1))
    E2 = np.exp(_exponent(p.k2, z, p.s2))
    return 1.0 + E1 + E2 + gamma * E1 * E2


def tau_two_soliton_h(z, p: SolitonParams):
    """Analytic h = 1 - 2 (ln tau)_zzbar for the two-soliton tau."""
    if not p.is_two_soliton:
        raise DegenerateParameters("two-soliton oracle needs k2, s2")
    k1, k2 = p.k1, p.k2
    q1, q2 = 3.0 / k1, 3.0 / k2
    gamma = interaction_coefficient(k1, k2)
    E1 = np.exp(_exponent(k1, z, p.s1))
    E2 = np.exp(_exponent(k2, z, p.s2))
    E12 = gamma * E1 * E2
    tau = 1.0 + E1 + E2 + E12
    _guard_tau(tau, np.maximum(np.abs(E1), np.abs(E2)))
    tau_z = k1 * E1 + k2 * E2 + (k1 + k2) * E12
    tau_zb = q1 * E1 + q2 * E2 + (q1 + q2) * E12
    tau_zzb = 3.0 * E1 + 3.0 * E2 + (k1 + k2) * (q1 + q2) * E12
    h = 1.0 - 2.0 * (tau_zzb * tau - tau_z * tau_zb) / tau**2
    return h.real if np.ndim(h) else float(h.real)


def _guard_tau(tau, largest_term):
    bad = np.abs(tau) < TAU_ZERO_RTOL * (1.0 + largest_term)
    if np.any(bad):
        raise TauZero("tau vanishes at a requested point")


def tau_zero_mask(tau_values, largest_term) -> np.ndarray:
    """Mask of nodes too close to the tau = 0 singular curves."""
    return np.abs(tau_values) < TAU_ZERO_RTOL * (1.0 + np.asarray(largest_term))


@dataclass(frozen=True)
class GridComparison:
    max_abs: float
    max_rel: float
    argmax_node: tuple[int, int]
    compared: int


def compare_grids(a: ScalarGrid, b: ScalarGrid, mask=None) -> GridComparison:
    """Elementwise comparison report over unmasked nodes.

    ``mask`` marks nodes to *include*; defaults to all.  Raises SpecMismatch
    when the two grids sample different lattices.
    """
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} != {b.spec}")
    use = np.ones(a.values.shape, dtype=bool) if mask is None else np.asarray(mask, bool)
    if use.shape != a.values.shape:
        raise SpecMismatch("mask shape does not match grid")
    if not use.any():
        return GridComparison(0.0, 0.0, (0, 0), 0)
    diff = np.abs(a.values - b.values)
    scale = np.maximum(np.abs(a.values), np.abs(b.values))
    rel = np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), 0.0)
    diff = np.where(use, diff, -np.inf)
    idx = np.unravel_index(np.argmax(diff), diff.shape)
    return GridComparison(
        max_abs=float(diff[idx]),
        max_rel=float(np.max(np.where(use, rel, -np.inf))),
        argmax_node=(int(idx[0]), int(idx[1])),
        compared=int(use.sum()),
    )
