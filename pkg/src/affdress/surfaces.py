"""Base surfaces: the vacuum frame/immersion family, the Hildebrand oracle
surface in conformal coordinates, real-frame conversion and finite-difference
extraction of affine invariants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _fd
from .core import (
    CoordinateSingularity,
    DegenerateJacobian,
    ZeroLambda,
    det3,
    inv3,
)
from .loopgroup import EPSILON, P132

# Eigenvectors of the cyclic matrix P132 (eigenvalue EPSILON**(2k) on column k)
# and the associated spectral projectors; exp of the frame generator is a
# 3-term sum of scalar exponentials over these projectors.
EIGVECS = np.array(
    [[1.0, 1.0, 1.0],
     [1.0, EPSILON**-2, EPSILON**2],
     [1.0, EPSILON**2, EPSILON**4]],
    dtype=complex,
).T  # column k = v_k = (1, eps^-2k, eps^2k)

PROJECTORS = np.array(
    [np.outer(EIGVECS[:, k], np.conj(EIGVECS[:, k])) / 3.0 for k in range(3)]
)

# Conformal factor of the printed vacuum immersion X: |X_z X_zbar X_zzbar|
# gives e^(2 psi) = 1/2, so the metric- and cubic-normalized vacuum (with
# e^psi = |U| = 1 and H = -2) is 2^(1/3) * X.
VACUUM_NORMALIZATION = 2.0 ** (1.0 / 3.0)


def _check_lambda(lam: complex) -> complex:
    lam = complex(lam)
    if abs(lam) < 1e-300:
        raise ZeroLambda("loop parameter must be nonzero")
    return lam


def exp_factors(z: complex, w: complex) -> np.ndarray:
    """The three scalars R(eps^(2k) w) = exp(eps^(2k) w z + zbar/(eps^(2k) w))."""
    w = _check_lambda(w)
    zb = np.conj(z)
    mus = EPSILON ** (2 * np.arange(3))
    return np.exp(mus * w * z + zb / (mus * w))


def vacuum_frame(z: complex, lam: complex) -> np.ndarray:
    """Normalized vacuum extended frame E(z, zbar, lam), E(0, 0, lam) = I.

    Computed as exp(lam*z*P132 + (zbar/lam)*P132^t) through the spectral
    projectors of P132; the factorized form F(0,0,lam)^-1 F(z,zbar,lam) is
    kept in ``vacuum_frame_f_form`` as an independent oracle.
    """
    R = exp_factors(z, lam)
    return np.tensordot(R, PROJECTORS, axes=(0, 0))


def vacuum_frame_row(row: np.ndarray, z: complex, lam: complex) -> np.ndarray:
    """Row action l -> l @ E(z, zbar, lam) without forming the matrix."""
    R = exp_factors(z, lam)
    coeffs = row @ EIGVECS  # l . v_k
    return (R * coeffs / 3.0) @ np.conj(EIGVECS).T


def vacuum_frame_dz(z: complex, lam: complex) -> np.ndarray:
    """Exact z-derivative of the vacuum frame: lam * P132 @ E."""
    return lam * P132 @ vacuum_frame(z, lam)


def vacuum_frame_f_form(z: complex, lam: complex) -> np.ndarray:
    """Oracle form F(0,0,lam)^-1 F(z,zbar,lam) with the explicit conformal F."""
    F0 = vacuum_big_frame(0.0, lam)
    return inv3(F0) @ vacuum_big_frame(z, lam)


def vacuum_big_frame(z: complex, lam: complex) -> np.ndarray:
    """The conformal frame F = ((2/lam) X_z, 2 lam X_zbar, 2 X) of Example 6.1."""
    R = exp_factors(z, lam)
    s = np.sqrt(3.0) / 3.0
    e2, e4 = EPSILON**2, EPSILON**4
    return s * np.array(
        [
            [R[0], R[0], R[0]],
            [e2 * R[1], e4 * R[1], R[1]],
            [e4 * R[2], e2 * R[2], R[2]],
        ],
        dtype=complex,
    )


def vacuum_immersion(z: complex, lam: complex) -> np.ndarray:
    """Conformal vacuum immersion X with X1*X2*X3 = sqrt(3)/72 identically."""
    return (np.sqrt(3.0) / 6.0) * exp_factors(z, lam)


@dataclass(frozen=True)
class VacuumBase:
    """Closed-form dressing base: the vacuum scaled to unit invariants.

    Provides r, r_z, r_zbar, the frame E and the constants e^psi = 1, U = 1,
    H = -2 that the dressing formulas consume.
    """

    H: float = -2.0
    e_psi: float = 1.0
    U: complex = 1.0

    def r(self, z: complex, lam: complex) -> np.ndarray:
        return VACUUM_NORMALIZATION * vacuum_immersion(z, lam)

    def r_z(self, z: complex, lam: complex) -> np.ndarray:
        R = exp_factors(z, lam)
        mus = EPSILON ** (2 * np.arange(3))
        return VACUUM_NORMALIZATION * (np.sqrt(3.0) / 6.0) * mus * lam * R

    def r_zbar(self, z: complex, lam: complex) -> np.ndarray:
        R = exp_factors(z, lam)
        mus = EPSILON ** (2 * np.arange(3))
        return VACUUM_NORMALIZATION * (np.sqrt(3.0) / 6.0) * R / (mus * lam)

    def frame(self, z: complex, lam: complex) -> np.ndarray:
        return vacuum_frame(z, lam)


def conjugation_matrix(H: float = -2.0) -> tuple[np.ndarray, complex]:
    """Constant change of frame realifying twisted frame columns.

    The third diagonal entry is sqrt(-H/2): +1 realifies the hyperbolic
    column structure (u, conj(u), real) and +i the elliptic one.
    """
    n = complex(np.sqrt(complex(-H / 2.0)))
    s = 1.0 / np.sqrt(2.0)
    N = np.array(
        [[s, s, 0.0], [1j * s, -1j * s, 0.0], [0.0, 0.0, n]], dtype=complex
    )
    return N, n


def real_immersion(frame_third_column: np.ndarray, H: float = -2.0) -> np.ndarray:
    """Real R^3 point from the third column of a twisted frame.

    Applies the realifying conjugation, takes the real part and scales by
    -1/H.  The extra 2^(1/3) factor makes the conversion equiaffine against
    the unit-invariant vacuum, so dressed frames inherit the metric claims
    exactly (the vacuum's own conversion then has affine determinant 1).
    """
    N, n = conjugation_matrix(H)
    col = np.asarray(frame_third_column, dtype=complex)
    w = (N @ col) / n
    return (-1.0 / H) * VACUUM_NORMALIZATION * w.real


def hildebrand_surface(x: float, y: float, offset: float = 0.0) -> np.ndarray:
    """Conformal parametrization of the Hildebrand hyperbolic affine sphere.

    Singular on the line x = offset where csch(sqrt(3)(x - offset)) blows up.
    The affine metric factor is (3/2) (csch^2(sqrt(3) u) + 2/3), H = -2 and
    the cubic-form coefficient has unit modulus.
    """
    u = x - offset
    arg = np.sqrt(3.0) * u
    s = np.sinh(arg)
    if abs(s) < 1e-12:
        raise CoordinateSingularity(f"sinh(sqrt(3)*{u}) vanishes")
    csch = 1.0 / s
    ch = np.cosh(arg)
    f = csch / np.sqrt(3.0)
    return np.array(
        [
            f * (s * s + 3.0 * y) * np.exp(y),
            -f * ch * np.exp(-2.0 * y),
            -f * np.exp(y),
        ]
    )


def hildebrand_metric_factor(x: float, offset: float = 0.0) -> float:
    """Closed-form e^psi of the Hildebrand surface: (3/2)(csch^2(sqrt3 u)+2/3)."""
    arg = np.sqrt(3.0) * (x - offset)
    s = np.sinh(arg)
    if abs(s) < 1e-12:
        raise CoordinateSingularity(f"sinh(sqrt(3)*{x - offset}) vanishes")
    return float(1.5 * (1.0 / s**2 + 2.0 / 3.0))


@dataclass(frozen=True)
class AffineInvariants:
    """Affine metric exponent, cubic coefficient and conformality defect."""

    psi: float
    U: complex
    conformal_residual: float


def affine_invariants_fd(
    immersion, z: complex, step: float = 1e-4, richardson: bool = True
) -> AffineInvariants:
    """Extract (psi, U) of a real immersion (x, y) -> R^3 by central FD.

    Uses the determinant identities |r_z r_zbar r_zzbar| = (i/4) e^(2 psi)
    and |r_z r_zz r_zzz| = (i/4) U^2; the magnitude of the first fixes psi,
    U is taken as the square root with nonnegative real part (only |U| is
    branch-independent).  |r_z r_zbar r_zz| measures the affine-conformal
    defect and should vanish.
    """
    x, y = float(np.real(z)), float(np.imag(z))
    table = (_fd.partials_richardson if richardson else _fd.partials)(
        immersion, x, y, step
    )
    w = _fd.wirtinger_from_partials(table)
    d1 = det3(np.column_stack([w["f_z"], w["f_zbar"], w["f_zzbar"]]))
    scale = (
        np.abs(w["f_z"]).max() * np.abs(w["f_zbar"]).max() * np.abs(w["f_zzbar"]).max()
    )
    if abs(d1) < 1e-12 * max(scale, 1e-300):
        raise DegenerateJacobian(f"|r_z r_zbar r_zzbar| = {abs(d1):.3e} negligible")
    e2psi = abs(4.0 * d1)
    d2 = det3(np.column_stack([w["f_z"], w["f_zz"], w["f_zzz"]]))
    u2 = -4j * d2
    U = np.sqrt(u2)
    if U.real < 0:
        U = -U
    d3 = det3(np.column_stack([w["f_z"], w["f_zbar"], w["f_zz"]]))
    return AffineInvariants(
        psi=float(0.5 * np.log(e2psi)), U=complex(U), conformal_residual=float(abs(d3))
    )
