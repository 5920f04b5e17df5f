"""Complex 3x3 matrix helpers, projective-line normalization and grid containers.

Matrices and vectors are plain numpy arrays of ``complex128`` (shape (3, 3)
and (3,)); scalars are Python/numpy complex.  Everything here is pure and
allocation-light so it can be called per grid node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Relative thresholds used by the guarded operations below.
SINGULAR_DET_RTOL = 1e-12
LINE_AT_INFINITY_RTOL = 1e-12
CONE_PROXIMITY_RTOL = 1e-9
POLE_PROXIMITY_RTOL = 1e-9


class AffdressError(Exception):
    """Base class for all library errors."""


class SingularMatrix(AffdressError):
    pass


class LineAtInfinity(AffdressError):
    pass


class LineInCone(AffdressError):
    pass


class PoleProximity(AffdressError):
    pass


class ZeroLambda(AffdressError):
    pass


class CoordinateSingularity(AffdressError):
    pass


class DegenerateDenominator(AffdressError):
    pass


class NonPositivePsi(AffdressError):
    pass


class NonPositiveGauge(AffdressError):
    pass


class DegenerateParameters(AffdressError):
    pass


class TauZero(AffdressError):
    pass


class DegenerateJacobian(AffdressError):
    pass


class DenominatorPole(AffdressError):
    pass


class PhiZero(AffdressError):
    pass


class SpecMismatch(AffdressError):
    pass


def mat3(rows) -> np.ndarray:
    """3x3 complex matrix from any nested sequence."""
    m = np.asarray(rows, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"expected 3x3, got {m.shape}")
    return m


def vec3(comps) -> np.ndarray:
    v = np.asarray(comps, dtype=complex)
    if v.shape != (3,):
        raise ValueError(f"expected length-3 vector, got {v.shape}")
    return v


IDENTITY3 = np.eye(3, dtype=complex)


def det3(m: np.ndarray) -> complex:
    """Determinant of a 3x3 matrix by cofactor expansion along the first row."""
    return (
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
    )


def inv3(m: np.ndarray) -> np.ndarray:
    """Adjugate/determinant inverse of a 3x3 matrix.

    Raises SingularMatrix when ``|det| < 1e-12 * max|entry|**3``; all loop
    matrices in this library are evaluated away from their poles where the
    determinant is O(1).
    """
    d = det3(m)
    scale = np.abs(m).max()
    if abs(d) < SINGULAR_DET_RTOL * max(scale, 1e-300) ** 3:
        raise SingularMatrix(f"|det| = {abs(d):.3e} below threshold")
    adj = np.empty((3, 3), dtype=complex)
    adj[0, 0] = m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    adj[0, 1] = m[0, 2] * m[2, 1] - m[0, 1] * m[2, 2]
    adj[0, 2] = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    adj[1, 0] = m[1, 2] * m[2, 0] - m[1, 0] * m[2, 2]
    adj[1, 1] = m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
    adj[1, 2] = m[0, 2] * m[1, 0] - m[0, 0] * m[1, 2]
    adj[2, 0] = m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]
    adj[2, 1] = m[0, 1] * m[2, 0] - m[0, 0] * m[2, 1]
    adj[2, 2] = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    return adj / d


def solve_line_normalize(v: np.ndarray) -> tuple[complex, complex]:
    """Normalize a C^3 vector to line coordinates (b, c) with l = (b, c, 1).

    Raises LineAtInfinity when the third coordinate is negligible relative to
    the vector (such lines lie in the degenerate cone: z3 = 0).
    """
    v = np.asarray(v, dtype=complex)
    norm = np.abs(v).max()
    if norm == 0.0 or abs(v[2]) < LINE_AT_INFINITY_RTOL * norm:
        raise LineAtInfinity(f"third coordinate {v[2]!r} negligible")
    return v[0] / v[2], v[1] / v[2]


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling lattice; node (i, j) maps to z = x_i + 1j*y_j."""

    x_min: float
    x_max: float
    nx: int
    y_min: float
    y_max: float
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid bounds must satisfy min < max")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 nodes per axis")

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """(nx, ny) arrays X, Y with X[i, j] = x_i, Y[i, j] = y_j."""
        return np.meshgrid(self.xs(), self.ys(), indexing="ij")

    def zgrid(self) -> np.ndarray:
        x, y = self.meshgrid()
        return x + 1j * y


@dataclass
class ScalarGrid:
    """Complex/real field sampled on a GridSpec (values[i, j] at x_i, y_j)."""

    spec: GridSpec
    values: np.ndarray
    admissible: np.ndarray | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.spec.nx, self.spec.ny):
            raise ValueError("values shape does not match grid spec")
        if self.admissible is None:
            self.admissible = np.ones(self.values.shape, dtype=bool)
        else:
            self.admissible = np.asarray(self.admissible, dtype=bool)
            if self.admissible.shape != self.values.shape:
                raise ValueError("admissible mask shape does not match grid spec")


@dataclass
class SurfaceGrid:
    """Real R^3 immersion points sampled on a GridSpec."""

    spec: GridSpec
    points: np.ndarray
    valid: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.shape != (self.spec.nx, self.spec.ny, 3):
            raise ValueError("points shape does not match grid spec")
        if self.valid is None:
            self.valid = np.ones(self.points.shape[:2], dtype=bool)
        else:
            self.valid = np.asarray(self.valid, dtype=bool)
            if self.valid.shape != self.points.shape[:2]:
                raise ValueError("valid mask shape does not match grid spec")
