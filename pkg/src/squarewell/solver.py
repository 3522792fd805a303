"""Bound states of the finite square well by three independent routes.

Every solution is a point ``w = u + iv = R exp(i theta)`` on the circle of
radius ``R`` whose image ``w exp(w)`` lies on a coordinate axis of the
z-plane, i.e. ``(u + iv) exp(iv) = gamma R`` for a fourth root of unity
``gamma``.

* :func:`solve_z_plane` samples the image of the circle and brackets its
  axis crossings in ``theta``.
* :func:`solve_w_plane` pulls the four axial rays back through each Lambert W
  branch and intersects the resulting lines with the circle.
* :func:`solve_classical` bisects ``v tan v = u`` and ``v cot v = -u`` on
  ``u**2 + v**2 = R**2`` and serves as the oracle for the other two.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import BranchRangeTooSmall
from .lambertw import forward_map, lambert_w_array
from .model import BoundState, Parity, WellParameters, check_strength, energy_from_u
from .roots import Bracket, bisect, find_brackets, newton_polish

__all__ = [
    "Axis",
    "GAMMAS",
    "PhaseSolution",
    "SolverReport",
    "METHODS",
    "solve",
    "solve_z_plane",
    "solve_w_plane",
    "solve_classical",
    "physical_filter",
    "default_k_range",
    "gamma_of",
    "master_residual",
    "squared_form_residual",
    "max_disagreement",
]

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi
GAMMAS = (1 + 0j, -1 + 0j, 1j, -1j)
METHODS = ("w_plane", "z_plane", "classical")

# u below this fraction of R is reported as a marginal (threshold) state
MARGINAL_U = 1e-10
# coincident z-plane points share coordinates to this relative tolerance
_SAME_POINT = 1e-9
# w-plane hits closer than this (relative to R) are one crossing
_SAME_W = 1e-6


class Axis(str, Enum):
    REAL = "real_axis"
    IMAG = "imag_axis"


@dataclass(frozen=True)
class PhaseSolution:
    """Crossing of the image curve with a z-plane axis at ``w = R exp(i theta)``.

    ``multiplicity_tag`` numbers crossings that land on the same z-plane
    point along different stretches of the curve.  ``branch`` records the
    Lambert W branch for w-plane results.
    """

    theta: float
    axis: Axis
    multiplicity_tag: int = 0
    branch: Optional[int] = None

    def w(self, R: float) -> complex:
        return cmath.rect(R, self.theta)

    def sort_key(self):
        return (self.theta, self.axis.value, self.multiplicity_tag)


@dataclass
class SolverReport:
    R: float
    method: str
    all_crossings: list[PhaseSolution]
    physical: list[BoundState]
    residuals: list[float]
    marginal: list[BoundState] = field(default_factory=list)
    branches: tuple[int, ...] = ()

    @property
    def residual_max(self) -> float:
        return max(self.residuals, default=0.0)

    def uv(self) -> np.ndarray:
        return np.array([[s.u, s.v] for s in self.physical]).reshape(-1, 2)


def gamma_of(R: float, theta: float) -> complex:
    """Fourth root of unity nearest ``w exp(iv) / R`` for ``w = R exp(i theta)``."""
    q = cmath.exp(1j * (theta + R * math.sin(theta)))
    return min(GAMMAS, key=lambda g: abs(q - g))


def master_residual(u: float, v: float, gamma: complex, R: float) -> float:
    """``|(u + iv) exp(iv) - gamma R|``."""
    return abs(complex(u, v) * cmath.exp(1j * v) - gamma * R)


def squared_form_residual(u: float, v: float, gamma: complex, R: float) -> float:
    """``|(u - iv)**2 - gamma**2 R**2 exp(2iv)|``."""
    return abs(complex(u, -v) ** 2 - gamma * gamma * R * R * cmath.exp(2j * v))


def _crossing_residual(R: float, theta: float) -> float:
    return master_residual(R * math.cos(theta), R * math.sin(theta), gamma_of(R, theta), R)


def _norm_theta(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    if theta >= TWO_PI:
        theta = 0.0
    return theta + 0.0


def tag_multiplicities(crossings: Iterable[PhaseSolution], z_of) -> list[PhaseSolution]:
    """Number crossings that share a z-plane point (``z_of(crossing)``) on the same axis."""
    ordered = sorted(crossings, key=PhaseSolution.sort_key)
    seen: list[tuple[Axis, complex]] = []
    out = []
    for c in ordered:
        z = z_of(c)
        tol = _SAME_POINT * max(1.0, abs(z))
        tag = sum(1 for axis, zz in seen if axis is c.axis and abs(zz - z) <= tol)
        seen.append((c.axis, z))
        out.append(PhaseSolution(c.theta, c.axis, tag, c.branch))
    return out


def _tag_multiplicities(crossings: Iterable[PhaseSolution], R: float) -> list[PhaseSolution]:
    return tag_multiplicities(crossings, lambda c: forward_map(c.w(R)))


def _classify(crossings: Sequence[PhaseSolution], R: float,
              well: Optional[WellParameters]) -> tuple[list[BoundState], list[BoundState]]:
    well = well or WellParameters.natural(R)
    physical, marginal = [], []
    taken: list[float] = []
    for c in crossings:
        if not (0.0 < c.theta < HALF_PI):
            continue
        if any(abs(c.theta - t) <= 1e-9 for t in taken):
            continue  # a tangential double root is still one level
        taken.append(c.theta)
        u, v = R * math.cos(c.theta), R * math.sin(c.theta)
        parity = Parity.EVEN if c.axis is Axis.IMAG else Parity.ODD
        state = BoundState(parity, u, v, c.theta, energy_from_u(well, u), 0)
        (physical if u >= MARGINAL_U * R else marginal).append(state)
    physical.sort(key=lambda s: s.v)
    physical = [BoundState(s.parity, s.u, s.v, s.theta, s.energy, n) for n, s in enumerate(physical)]
    return physical, marginal


def physical_filter(crossings: Sequence[PhaseSolution], R: float,
                    well: Optional[WellParameters] = None) -> list[BoundState]:
    """Bound states from a full-circle crossing list.

    Keeps ``0 < theta < pi/2``; imaginary-axis crossings are even
    (``v tan v = u``), real-axis crossings odd (``v cot v = -u``).  States
    are indexed by increasing ``v``.  Energies use ``well``, or natural units
    (``E = u**2``) when omitted.
    """
    R = check_strength(R)
    return _classify(crossings, R, well)[0]


def _report(R: float, method: str, crossings: list[PhaseSolution],
            well: Optional[WellParameters], branches: tuple[int, ...] = ()) -> SolverReport:
    crossings = sorted(crossings, key=PhaseSolution.sort_key)
    physical, marginal = _classify(crossings, R, well)
    residuals = [_crossing_residual(R, c.theta) for c in crossings]
    return SolverReport(R, method, crossings, physical, residuals, marginal, branches)


# -- Approach B: z-plane -------------------------------------------------------

def _g(R: float, theta):
    # same axis crossings as w e^w: the two differ by the factor exp(R cos theta)
    return R * np.exp(1j * theta) * np.exp(1j * R * np.sin(theta))


def z_plane_samples(R: float) -> int:
    return max(4096, math.ceil(512 * R))


def solve_z_plane(R: float, n_samples: Optional[int] = None,
                  well: Optional[WellParameters] = None) -> SolverReport:
    """All axis crossings of the image of ``|w| = R`` under ``w exp(w)``."""
    R = check_strength(R)
    n = n_samples or z_plane_samples(R)
    theta = TWO_PI * np.arange(n) / n
    g = _g(R, theta)

    def gs(t: float) -> complex:
        return R * cmath.exp(1j * (t + R * math.sin(t)))

    def dgs(t: float) -> complex:
        # g' = i (1 + R cos t) g
        return 1j * (1.0 + R * math.cos(t)) * gs(t)

    parts = (
        (Axis.REAL, g.imag, lambda t: gs(t).imag, lambda t: dgs(t).imag),
        (Axis.IMAG, g.real, lambda t: gs(t).real, lambda t: dgs(t).real),
    )
    crossings: list[PhaseSolution] = []
    for axis, y, f, df in parts:
        for br in find_brackets(theta, y, periodic=True, period=TWO_PI, func=f,
                                touch_tol=1e-12 * R):
            t = _refine(f, df, br)
            crossings.append(PhaseSolution(_norm_theta(t), axis))
            if br.double:
                crossings.append(PhaseSolution(_norm_theta(t), axis))
    assert crossings, "z-plane sampling found no crossings"
    return _report(R, "z_plane", _tag_multiplicities(crossings, R), well)


def _refine(f, df, br: Bracket) -> float:
    if br.exact is not None:
        return br.exact
    t = bisect(f, br.lo, br.hi)
    return newton_polish(f, df, t, br.lo, br.hi)


# -- Approach A: w-plane -------------------------------------------------------

def default_k_range(R: float) -> range:
    m = math.ceil(R / math.pi) + 1
    return range(-m, m + 1)


def _axis_of(gamma: complex) -> Axis:
    return Axis.REAL if gamma.imag == 0 else Axis.IMAG


def solve_w_plane(R: float, k_range: Optional[Iterable[int]] = None,
                  n_grid: Optional[int] = None, check: bool = True,
                  well: Optional[WellParameters] = None) -> SolverReport:
    """Intersections of the Lambert W images of the axial rays with ``|w| = R``.

    Along each ray ``gamma r`` the distance ``|W_k(gamma r)| - R`` is sampled
    on a grid uniform in ``log r`` and its sign changes are bisected.  Every
    intersection satisfies ``R exp(-R) <= r <= R exp(R)``.

    Raises
    ------
    BranchRangeTooSmall
        If ``check`` is set and fewer crossings turn up than the z-plane
        method counts.
    """
    R = check_strength(R)
    ks = list(default_k_range(R) if k_range is None else k_range)
    t_lo = math.log(min(1e-12, 0.5 * R * math.exp(-R)))
    t_hi = math.log(2.0 * R) + R
    n = n_grid or max(2048, math.ceil(64 * (t_hi - t_lo)))
    t = np.linspace(t_lo, t_hi, n)
    r = np.exp(t)

    hits: list[tuple[complex, PhaseSolution]] = []
    for k in ks:
        for gamma in GAMMAS:
            w = lambert_w_array(k, gamma * r)
            y = np.abs(w) - R

            def f(s: float, k=k, gamma=gamma) -> float:
                return abs(_w_at(k, gamma, s)) - R

            def df(s: float, k=k, gamma=gamma) -> float:
                # d|w|/dt with dw/dt = w / (1 + w)
                ws = _w_at(k, gamma, s)
                return abs(ws) * (1.0 / (1.0 + ws)).real

            for br in find_brackets(t, y, func=f, touch_tol=1e-12 * R):
                s = _refine(f, df, br)
                ws = _w_at(k, gamma, s)
                sol = PhaseSolution(_norm_theta(math.atan2(ws.imag, ws.real)), _axis_of(gamma), 0, k)
                hits.append((ws, sol))
                if br.double:
                    hits.append((ws, sol))

    crossings: list[PhaseSolution] = []
    kept: list[tuple[complex, PhaseSolution]] = []
    for ws, sol in hits:
        # w = -1 (R = 1) is the critical point shared by branches 0 and -1,
        # where the z-plane sees a single odd-order crossing
        critical = abs(ws + 1.0) <= _SAME_W
        dup = any(s.axis is sol.axis and abs(w0 - ws) <= _SAME_W * R
                  and (s.branch != sol.branch or critical)
                  for w0, s in kept)
        if dup:
            continue
        kept.append((ws, sol))
        crossings.append(sol)

    branches = tuple(sorted({c.branch for c in crossings}))
    if check:
        expected = len(solve_z_plane(R).all_crossings)
        if len(crossings) < expected:
            raise BranchRangeTooSmall(
                f"w-plane search over k in [{min(ks)}, {max(ks)}] found {len(crossings)} "
                f"crossings, z-plane found {expected}"
            )
    return _report(R, "w_plane", _tag_multiplicities(crossings, R), well, branches)


def _w_at(k: int, gamma: complex, s: float) -> complex:
    return complex(lambert_w_array(k, np.array([gamma * math.exp(s)]))[0])


# -- classical oracle -----------------------------------------------------------

def solve_classical(R: float, well: Optional[WellParameters] = None) -> SolverReport:
    """Textbook route: bisect ``v tan v = u`` (even) and ``v cot v = -u`` (odd).

    With ``u = sqrt(R**2 - v**2)``, each even root lies in
    ``[m pi, min(m pi + pi/2, R)]`` and each odd root in
    ``[m pi + pi/2, min((m + 1) pi, R)]``; the poles of tan and cot are only
    ever bracket endpoints, never evaluated.  ``all_crossings`` lists only the
    first-quadrant solutions.
    """
    R = check_strength(R)
    R2 = R * R

    def u_of(v: float) -> float:
        return math.sqrt(max(R2 - v * v, 0.0))

    def f_even(v):
        return v * math.tan(v) - u_of(v)

    def df_even(v):
        u = u_of(v)
        return math.tan(v) + v / math.cos(v) ** 2 + (v / u if u > 0 else math.inf)

    def f_odd(v):
        return v / math.tan(v) + u_of(v)

    def df_odd(v):
        u = u_of(v)
        return 1.0 / math.tan(v) - v / math.sin(v) ** 2 - (v / u if u > 0 else math.inf)

    crossings: list[PhaseSolution] = []
    for offset, f, df, axis in ((0.0, f_even, df_even, Axis.IMAG),
                                (HALF_PI, f_odd, df_odd, Axis.REAL)):
        m = 0
        while True:
            a = m * math.pi + offset
            if a >= R:
                break
            b = min(a + HALF_PI, R)
            fa = -R if a == 0.0 else f(a)
            v = bisect(f, a, b, fa=fa)
            v = newton_polish(f, df, v, a, b)
            crossings.append(PhaseSolution(_norm_theta(math.atan2(v, u_of(v))), axis))
            m += 1
    return _report(R, "classical", crossings, well)


# -- dispatch --------------------------------------------------------------------

def solve(R: float, method: str = "z_plane", well: Optional[WellParameters] = None) -> SolverReport:
    method = method.replace("-", "_")
    if method == "z_plane":
        return solve_z_plane(R, well=well)
    if method == "w_plane":
        return solve_w_plane(R, well=well)
    if method == "classical":
        return solve_classical(R, well=well)
    raise ValueError(f"unknown method {method!r}")


def max_disagreement(reports: Sequence[SolverReport]) -> float:
    """Largest pairwise difference of the physical ``(u, v)`` sets, inf on a count mismatch."""
    worst = 0.0
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            a, b = reports[i].uv(), reports[j].uv()
            if a.shape != b.shape:
                return math.inf
            if a.size:
                worst = max(worst, float(np.max(np.abs(a - b))))
    return worst
