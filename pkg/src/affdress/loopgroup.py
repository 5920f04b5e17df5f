"""Twisted rational loops: order-6/conjugation automorphisms and the 3- and
6-pole rational elements acting in the dressing pipeline.

Conventions
-----------
* ``EPSILON = exp(i*pi/3)``; the three poles of a simple element sit at
  ``alpha * {1, EPSILON**2, EPSILON**4}``.
* The order-6 automorphism is ``sigma(g) = P (g^t)^-1 P^-1`` with
  ``P = Q @ P12``; a twisted loop satisfies ``sigma(g(lam)) = g(EPSILON*lam)``.
* The conjugate-linear involution is ``tau(g) = T conj(g) T^-1`` with
  ``T = T_PLUS`` (hyperbolic, H = -2) or ``T_MINUS`` (elliptic, H = +2); a
  twisted loop satisfies ``tau(g(1/conj(lam))) = g(lam)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import (
    CONE_PROXIMITY_RTOL,
    POLE_PROXIMITY_RTOL,
    IDENTITY3,
    DegenerateDenominator,
    DegenerateParameters,
    LineInCone,
    NonPositivePsi,
    PoleProximity,
    inv3,
    mat3,
    solve_line_normalize,
)

EPSILON = np.exp(1j * np.pi / 3)

Q = np.diag([EPSILON**4, EPSILON**2, 1.0]).astype(complex)
P12 = mat3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
P = Q @ P12
P132 = mat3([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
T_PLUS = mat3([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
T_MINUS = mat3([[0, 1, 0], [1, 0, 0], [0, 0, -1]])


@dataclass(frozen=True)
class TwistSpec:
    """Reality-condition flavour: hyperbolic (tau_1) or elliptic (tau_2)."""

    name: str
    H: float

    @property
    def T(self) -> np.ndarray:
        # third diagonal entry of T is -H/2
        return T_PLUS if self.H < 0 else T_MINUS


HYPERBOLIC = TwistSpec("hyperbolic", -2.0)
ELLIPTIC = TwistSpec("elliptic", +2.0)


@dataclass(frozen=True)
class TwistConstants:
    """Bundle of the constant structure matrices (mostly for introspection)."""

    epsilon: complex = EPSILON
    Q: np.ndarray = None
    P12: np.ndarray = None
    P: np.ndarray = None
    P132: np.ndarray = None
    T_plus: np.ndarray = None
    T_minus: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "Q", Q.copy())
        object.__setattr__(self, "P12", P12.copy())
        object.__setattr__(self, "P", P.copy())
        object.__setattr__(self, "P132", P132.copy())
        object.__setattr__(self, "T_plus", T_PLUS.copy())
        object.__setattr__(self, "T_minus", T_MINUS.copy())


CONSTANTS = TwistConstants()


def sigma_twist(g: np.ndarray) -> np.ndarray:
    """Order-6 automorphism at group level: P (g^t)^-1 P^-1."""
    return P @ inv3(np.asarray(g, dtype=complex).T) @ inv3(P)


def tau_twist(g: np.ndarray, spec: TwistSpec = HYPERBOLIC) -> np.ndarray:
    """Conjugate-linear involution at group level: T conj(g) T^-1."""
    T = spec.T
    return T @ np.conj(np.asarray(g, dtype=complex)) @ inv3(T)


@dataclass(frozen=True)
class ProjLine:
    """The projective line C * (b, c, 1); must avoid the cone 2bc = 1."""

    b: complex
    c: complex

    def __post_init__(self):
        d = self.cone_margin
        if abs(d) <= CONE_PROXIMITY_RTOL * (1.0 + abs(self.b) * abs(self.c)):
            raise LineInCone(f"2bc - 1 = {d!r} too close to the cone")

    @property
    def cone_margin(self) -> complex:
        return 2.0 * self.b * self.c - 1.0

    def row(self) -> np.ndarray:
        return np.array([self.b, self.c, 1.0], dtype=complex)

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "ProjLine":
        b, c = solve_line_normalize(v)
        return cls(complex(b), complex(c))


def _pole_guard(alpha: complex, lam: complex) -> complex:
    denom = lam**3 - alpha**3
    if abs(denom) < POLE_PROXIMITY_RTOL * (1.0 + abs(alpha) ** 3):
        raise PoleProximity(f"lambda^3 - alpha^3 = {denom!r} too small")
    return denom


def rank1_loop(alpha: complex, line: ProjLine, lam: complex) -> np.ndarray:
    """Rank-1 simple loop g_{alpha,l}(lam) without the diagonal gauge."""
    b, c = line.b, line.c
    D = line.cone_margin
    denom = _pole_guard(alpha, lam)
    s = 2.0 / denom
    a2, a3 = alpha**2, alpha**3
    l2 = lam**2
    M = np.array(
        [
            [a3 * b * c / D, alpha * l2 * c * c / D, a2 * lam * c / D],
            [a2 * lam * b * b, a3 * b * c, alpha * l2 * b],
            [alpha * l2 * b, a2 * lam * c, a3],
        ],
        dtype=complex,
    )
    return IDENTITY3 + s * M


def rank2_loop(alpha: complex, line: ProjLine, lam: complex) -> np.ndarray:
    """Rank-2 simple loop m_{alpha,l}(lam) without the diagonal gauge."""
    b, c = line.b, line.c
    D = line.cone_margin
    denom = _pole_guard(alpha, lam)
    s = 2.0 / denom
    a2, a3 = alpha**2, alpha**3
    l2 = lam**2
    M = np.array(
        [
            [a3 * (b * c - 1.0) / D, -alpha * l2 * c * c / D, a2 * lam * c / D],
            [a2 * lam * b * b, a3 * (1.0 - b * c), -alpha * l2 * b],
            [-alpha * l2 * b, a2 * lam * c, 0.0],
        ],
        dtype=complex,
    )
    return IDENTITY3 + s * M


def rank1_residue(alpha: complex, line: ProjLine) -> np.ndarray:
    """Residue matrix R of the rank-1 loop at lam = alpha."""
    b, c = line.b, line.c
    D = line.cone_margin
    col = np.array([c / D, b, 1.0], dtype=complex)
    row = np.array([b, c, 1.0], dtype=complex)
    return (2.0 * alpha / 3.0) * np.outer(col, row)


def gauge_matrix(d: complex, sign: int = 1) -> np.ndarray:
    if d == 0:
        raise DegenerateParameters("gauge d must be nonzero")
    if sign not in (1, -1):
        raise DegenerateParameters("sign must be +1 or -1")
    return np.diag([d, 1.0 / d, complex(sign)]).astype(complex)


@dataclass(frozen=True)
class SimpleElement:
    """A 3-pole rational loop A * g (rank 1) or A * m (rank 2).

    The poles sit at alpha * {1, EPSILON**2, EPSILON**4}.  ``tau_admissible``
    builds the reality-compatible element of Theorem-4.3(1) type: |alpha| = 1,
    c = conj(b), 2|b|^2 > 1 and d = sqrt(2|b|^2 - 1) > 0; rank 1 pairs with
    the elliptic condition, rank 2 with the hyperbolic one.
    """

    alpha: complex
    line: ProjLine
    d: complex = 1.0
    rank: int = 1
    sign: int = 1

    def __post_init__(self):
        if self.alpha == 0:
            raise DegenerateParameters("pole alpha must be nonzero")
        if self.rank not in (1, 2):
            raise DegenerateParameters("rank must be 1 or 2")
        if self.d == 0:
            raise DegenerateParameters("gauge d must be nonzero")
        if self.sign not in (1, -1):
            raise DegenerateParameters("sign must be +1 or -1")

    @classmethod
    def tau_admissible(cls, alpha: complex, b: complex, spec: TwistSpec) -> "SimpleElement":
        if abs(abs(alpha) - 1.0) > 1e-12:
            raise DegenerateParameters("tau-admissible simple element needs |alpha| = 1")
        dd = 2.0 * abs(b) ** 2 - 1.0
        if dd <= 0.0:
            raise DegenerateParameters("need 2|b|^2 - 1 > 0")
        rank = 1 if spec.H > 0 else 2
        return cls(alpha=alpha, line=ProjLine(b, np.conj(b)), d=np.sqrt(dd), rank=rank, sign=1)

    @property
    def A(self) -> np.ndarray:
        return gauge_matrix(self.d, self.sign)

    def poles(self) -> np.ndarray:
        return self.alpha * EPSILON ** np.array([0, 2, 4])

    def bare(self, lam: complex) -> np.ndarray:
        """Loop value without the diagonal gauge A."""
        if self.rank == 1:
            return rank1_loop(self.alpha, self.line, lam)
        return rank2_loop(self.alpha, self.line, lam)

    def __call__(self, lam: complex) -> np.ndarray:
        return self.A @ self.bare(lam)

    def det(self, lam: complex) -> complex:
        """Closed-form determinant ((lam^3+alpha^3)/(lam^3-alpha^3))^rank times det A."""
        r = (lam**3 + self.alpha**3) / (lam**3 - self.alpha**3)
        return r**self.rank * self.sign


def eval_simple(e: SimpleElement, lam: complex) -> np.ndarray:
    return e(lam)


def sixpole_denominator(alpha: complex, line2: ProjLine, H: float) -> float:
    aa = abs(alpha) ** 2
    return float(
        -(aa**2) * abs(line2.b) ** 2 + aa * abs(line2.c) ** 2 + (H / 4.0) * (1.0 - aa**3)
    )


def sixpole_psi(alpha: complex, line2: ProjLine, H: float) -> float:
    """Positivity certificate Psi_{alpha,b2,c2} for the six-pole gauge."""
    b2, c2 = line2.b, line2.c
    aa = abs(alpha) ** 2
    m = abs(2.0 * b2 * c2 - 1.0) ** 2
    t = abs(b2) ** 2
    u = abs(c2) ** 2
    return float(
        0.25 * m * aa**6
        - u**2 * aa**5
        - H * u * aa**4
        + (-2.0 * (b2 * c2).real - 0.5) * aa**3
        - H * t * aa**2
        - t**2 * aa
        + 0.25 * m
    )


def derive_sixpole_line1(
    alpha: complex, line2: ProjLine, H: float
) -> tuple[ProjLine, float]:
    """Derived first line (b1, c1) and gauge d^2 of the six-pole element.

    Returns the line making A g_{alpha,l1} g_{1/conj(alpha),l2} satisfy the
    tau-reality condition, together with d^2 = (2 b1 c1 - 1)(2 b2 c2 - 1) > 0.
    """
    r = abs(alpha)
    if r < 1e-12 or abs(r - 1.0) < 1e-12:
        raise DegenerateParameters("six-pole element requires |alpha| not in {0, 1}")
    b2, c2 = line2.b, line2.c
    aa = r**2
    t = abs(b2) ** 2
    u = abs(c2) ** 2
    a6 = aa**3
    D = sixpole_denominator(alpha, line2, H)
    if abs(D) < 1e-12 * (1.0 + t + u):
        raise DegenerateDenominator(f"denominator {D!r} negligible")
    m2 = 2.0 * b2 * c2 - 1.0
    b1 = (-b2 * (-aa * t + u - (H / 2.0) * aa**2) + 0.5 * (1.0 + a6) * np.conj(c2)) / D
    c1 = (
        -c2 * (t + aa**2 * u + (H / 2.0) * aa) + 0.5 * m2 * (1.0 + a6) * np.conj(b2)
    ) / (m2 * D)
    psi = sixpole_psi(alpha, line2, H)
    if psi <= 0.0:
        raise NonPositivePsi(f"Psi = {psi!r} <= 0")
    d_squared = psi / D**2
    return ProjLine(complex(b1), complex(c1)), float(d_squared)


@dataclass(frozen=True)
class SixPoleElement:
    """Product A g_{alpha,l1} g_{1/conj(alpha),l2} with poles on both orbits.

    Free data are (alpha, l2, H); l1 and the positive gauge d are derived so
    the product satisfies the tau-reality condition.
    """

    alpha: complex
    line2: ProjLine
    H: float = -2.0

    def __post_init__(self):
        line1, d2 = derive_sixpole_line1(self.alpha, self.line2, self.H)
        object.__setattr__(self, "line1", line1)
        object.__setattr__(self, "d", float(np.sqrt(d2)))

    @property
    def beta(self) -> complex:
        """Second pole parameter 1/conj(alpha)."""
        return 1.0 / np.conj(self.alpha)

    @property
    def A(self) -> np.ndarray:
        return gauge_matrix(self.d, 1)

    @property
    def spec(self) -> TwistSpec:
        return HYPERBOLIC if self.H < 0 else ELLIPTIC

    def poles(self) -> np.ndarray:
        orb = EPSILON ** np.array([0, 2, 4])
        return np.concatenate([self.alpha * orb, self.beta * orb])

    def __call__(self, lam: complex) -> np.ndarray:
        g1 = rank1_loop(self.alpha, self.line1, lam)
        g2 = rank1_loop(self.beta, self.line2, lam)
        return self.A @ g1 @ g2


def eval_sixpole(e: SixPoleElement, lam: complex) -> np.ndarray:
    return e(lam)


def sixpole_entries(e: SixPoleElement, lam: complex) -> np.ndarray:
    """Independent transcription of the nine explicit entries h_11..h_33.

    Kept as a literal copy of the published entry list; used as the oracle
    against the matrix product in ``SixPoleElement.__call__``.
    """
    a = e.alpha
    ab = np.conj(a)
    b1, c1 = e.line1.b, e.line1.c
    b2, c2 = e.line2.b, e.line2.c
    d = e.d
    m1 = 2.0 * b1 * c1 - 1.0
    m2 = 2.0 * b2 * c2 - 1.0
    l = lam
    l2, l3, l4 = l**2, l**3, l**4
    a2, a3 = a**2, a**3
    ab2, ab3 = ab**2, ab**3
    aa = a * ab  # |alpha|^2 as the analytic product
    den = (l3 - a3) * (l3 * ab3 - 1.0)
    h = np.empty((3, 3), dtype=complex)
    h[0, 0] = d * (
        (l3 * m1 + a3) * (l3 * ab3 * m2 + 1.0)
        + 4.0 * l3 * aa * b2 * c1 * m2 * (b2 * c1 + aa)
    ) / (den * m1 * m2)
    h[0, 1] = d * (
        2.0 * l2 * ab2 * c2**2 * (l3 * m1 + a3)
        + m2 * (2.0 * l2 * a * c1**2 * (m2 + l3 * ab3) + 4.0 * l2 * a2 * ab * c1 * c2)
    ) / (den * m1 * m2)
    h[0, 2] = d * (
        2.0 * l * ab * c2 * (l3 * m1 + a3)
        + m2 * (4.0 * l4 * a * ab2 * b2 * c1**2 + 2.0 * l * a2 * c1 * (l3 * ab3 + 1.0))
    ) / (den * m1 * m2)
    h[1, 0] = (
        2.0 * l * a2 * b1**2 * (l3 * ab3 * m2 + 1.0)
        + m2 * (
            2.0 * l * ab * b2**2 * (2.0 * a3 * b1 * c1 - a3 + l3)
            + 4.0 * l4 * a * ab2 * b1 * b2
        )
    ) / (d * den * m2)
    h[1, 1] = (
        4.0 * l3 * aa**2 * b1**2 * c2**2
        + m2 * (
            (a3 * m1 + l3) * (m2 + l3 * ab3) + 4.0 * l3 * a * ab2 * b1 * b2
        )
    ) / (d * den * m2)
    h[1, 2] = (
        4.0 * l2 * a2 * ab * b1**2 * c2
        + m2 * (
            2.0 * l2 * ab2 * b2 * (2.0 * a3 * b1 * c1 - a3 + l3)
            + 2.0 * l2 * a * b1 * (l3 * ab3 + 1.0)
        )
    ) / (d * den * m2)
    h[2, 0] = (
        2.0 * l2 * a * b1 * (l3 * ab3 * m2 + 1.0)
        + m2 * (4.0 * l2 * a2 * ab * b2**2 * c1 + 2.0 * l2 * ab2 * b2 * (l3 + a3))
    ) / (den * m2)
    h[2, 1] = (
        4.0 * l4 * a * ab2 * b1 * c2**2
        + m2 * (
            2.0 * l * a2 * c1 * (l3 * ab3 + m2) + 2.0 * l * ab * c2 * (l3 + a3)
        )
    ) / (den * m2)
    h[2, 2] = (
        4.0 * l3 * aa * b1 * c2
        + m2 * (4.0 * l3 * aa**2 * b2 * c1 + (l3 + a3) * (l3 * ab3 + 1.0))
    ) / (den * m2)
    return h


def check_twisted(
    loop: Callable[[complex], np.ndarray],
    spec: TwistSpec,
    samples: Sequence[complex],
) -> float:
    """Max deviation of a loop from the sigma- and tau-reality conditions.

    Evaluates ``|sigma(g(lam)) - g(EPSILON*lam)|`` and
    ``|tau(g(1/conj(lam))) - g(lam)|`` in the max-entry norm over the samples.
    """
    dev = 0.0
    for lam in samples:
        g = loop(lam)
        ds = np.abs(sigma_twist(g) - loop(EPSILON * lam)).max()
        dt = np.abs(tau_twist(loop(1.0 / np.conj(lam)), spec) - g).max()
        dev = max(dev, float(ds), float(dt))
    return dev
