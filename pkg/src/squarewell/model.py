"""Well parameters, energies and piecewise wavefunctions of bound states."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError

__all__ = [
    "Parity",
    "WellParameters",
    "BoundState",
    "WaveFunction",
    "check_strength",
    "strength_parameter",
    "energy_from_u",
    "wavefunction",
    "evaluate_wavefunction",
    "evaluate_derivative",
]


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


def check_strength(R: float) -> float:
    R = float(R)
    if not (R > 0.0) or not math.isfinite(R):
        raise DomainError("strength parameter must be positive")
    return R


@dataclass(frozen=True)
class WellParameters:
    """A square well of depth ``depth`` over ``|x| < half_width``.

    Any consistent unit system works; ``hbar`` defaults to 1 for natural
    units.
    """

    mass: float
    half_width: float
    depth: float
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "half_width", "depth", "hbar"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise DomainError(f"{name} must be positive, got {value!r}")

    @classmethod
    def natural(cls, R: float) -> "WellParameters":
        """Well with ``m = 1/2, L = 1, hbar = 1`` and depth ``R**2``, so ``E = u**2``."""
        R = check_strength(R)
        return cls(mass=0.5, half_width=1.0, depth=R * R, hbar=1.0)

    @property
    def strength(self) -> float:
        return strength_parameter(self)

    @property
    def energy_scale(self) -> float:
        """``hbar**2 / (2 m L**2)``, the energy per unit ``u**2``."""
        return self.hbar ** 2 / (2.0 * self.mass * self.half_width ** 2)


def strength_parameter(well: WellParameters) -> float:
    """Dimensionless ``R = L sqrt(2 m V0) / hbar``."""
    return well.half_width * math.sqrt(2.0 * well.mass * well.depth) / well.hbar


def energy_from_u(well: WellParameters, u: float) -> float:
    """Binding energy ``E = u**2 hbar**2 / (2 m L**2)`` for ``0 <= u <= R``."""
    R = strength_parameter(well)
    if u < 0.0 or u > R * (1.0 + 1e-12):
        raise DomainError(f"u={u!r} outside [0, R={R!r}]")
    return u * u * well.energy_scale


@dataclass(frozen=True)
class BoundState:
    """A bound level with ``w = u + iv = R exp(i theta)`` in the first quadrant.

    ``energy`` is the binding energy; the particle's total energy is
    ``-energy``.  ``level_index`` counts from 0 at the ground state.
    """

    parity: Parity
    u: float
    v: float
    theta: float
    energy: float
    level_index: int

    @property
    def w(self) -> complex:
        return complex(self.u, self.v)


@dataclass(frozen=True)
class WaveFunction:
    """Coefficients of the three-region solution.

    ``psi = D exp(beta x)`` for ``x < -L``,
    ``A exp(-i alpha x) + B exp(i alpha x)`` inside, and
    ``C exp(-beta x)`` for ``x > L``.
    """

    A: complex
    B: complex
    C: complex
    D: complex
    alpha: float
    beta: float
    L: float

    @property
    def epsilon(self) -> int:
        return 1 if abs(self.B - self.A) <= abs(self.B + self.A) else -1


def _norm_squared(alpha: float, beta: float, L: float, eps: int, A: float, C: complex) -> float:
    # interior: |2A cos(ax)|^2 or |2A sin(ax)|^2 integrated over [-L, L]
    interior = 4.0 * A * A * (L + eps * math.sin(2.0 * alpha * L) / (2.0 * alpha))
    # both tails: 2 * |C|^2 * exp(-2 beta L) / (2 beta)
    tails = abs(C) ** 2 * math.exp(-2.0 * beta * L) / beta
    return interior + tails


def wavefunction(state: BoundState, well: WellParameters) -> WaveFunction:
    """Normalised wavefunction for ``state``, with ``A`` real and positive.

    ``C`` follows from matching ``(i alpha psi + psi')`` at ``x = L``; the
    parity fixes ``B = eps A`` and ``D = eps C``.
    """
    L = well.half_width
    alpha = state.v / L
    beta = state.u / L
    if beta <= 0.0:
        raise DomainError("threshold state (u = 0) is not normalisable")
    eps = 1 if state.parity is Parity.EVEN else -1

    def tail_coeff(A: float) -> complex:
        # 2 i alpha A e^{-i alpha L} = (i alpha + beta) C e^{-beta L}
        return (2j * alpha * A * np.exp(-1j * alpha * L)) / ((1j * alpha + beta) * math.exp(-beta * L))

    C1 = complex(tail_coeff(1.0))
    A = 1.0 / math.sqrt(_norm_squared(alpha, beta, L, eps, 1.0, C1))
    C = C1 * A
    return WaveFunction(A=complex(A), B=complex(eps * A), C=C, D=eps * C,
                        alpha=alpha, beta=beta, L=L)


def evaluate_wavefunction(wf: WaveFunction, x, side: int = 0):
    """Value of ``psi`` at ``x`` (scalar or array).

    ``side=-1`` or ``+1`` forces the formula of the region just left or right
    of ``x``; the continuity checks use this to read both one-sided limits at
    ``x = +-L``.
    """
    xa = np.asarray(x, dtype=float)
    # clipped exponents keep the unselected regions from overflowing
    left = wf.D * np.exp(wf.beta * np.minimum(xa, wf.L))
    mid = wf.A * np.exp(-1j * wf.alpha * xa) + wf.B * np.exp(1j * wf.alpha * xa)
    right = wf.C * np.exp(-wf.beta * np.maximum(xa, -wf.L))
    out = _select(xa, wf.L, side, left, mid, right)
    return complex(out) if out.ndim == 0 else out


def evaluate_derivative(wf: WaveFunction, x, side: int = 0):
    """``psi'`` at ``x``; ``side`` as in :func:`evaluate_wavefunction`."""
    xa = np.asarray(x, dtype=float)
    left = wf.beta * wf.D * np.exp(wf.beta * np.minimum(xa, wf.L))
    mid = -1j * wf.alpha * wf.A * np.exp(-1j * wf.alpha * xa) + 1j * wf.alpha * wf.B * np.exp(1j * wf.alpha * xa)
    right = -wf.beta * wf.C * np.exp(-wf.beta * np.maximum(xa, -wf.L))
    out = _select(xa, wf.L, side, left, mid, right)
    return complex(out) if out.ndim == 0 else out


def _select(x, L, side, left, mid, right):
    if side == 0:
        return np.where(x < -L, left, np.where(x > L, right, mid))
    if side < 0:
        return np.where(x <= -L, left, np.where(x <= L, mid, right))
    return np.where(x < -L, left, np.where(x < L, mid, right))
