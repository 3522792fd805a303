"""Sampled geometry of the two solution pictures.

In the w-plane the axial rays of the z-plane pull back, branch by branch,
to Lambert W lines that cut the circle ``|w| = R``.  In the z-plane the
circle maps to a closed multi-loop curve that crosses the axes.  Both are
represented as :class:`Polyline` objects; the crossing counter and the
angle check work directly on them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateTangent, UndersampledCurve
from .lambertw import forward_map, lambert_w, lambert_w_array
from .model import check_strength
from .roots import bisect, find_brackets
from .solver import Axis, PhaseSolution, gamma_of, tag_multiplicities

__all__ = [
    "Polyline",
    "AngleCheck",
    "RAY_LABELS",
    "sample_branch_image",
    "sample_circle_image",
    "count_axis_crossings",
    "conformal_angle_check",
    "angle_between",
]

FD_STEP = 1e-7

RAY_LABELS = {1 + 0j: "pos_real", -1 + 0j: "neg_real", 1j: "pos_imag", -1j: "neg_imag"}


@dataclass(frozen=True, eq=False)
class Polyline:
    """Ordered complex points, optionally tagged with the curve parameter.

    ``source`` maps a parameter value back onto the exact curve so crossing
    refinement can go beyond the sampled chords.
    """

    points: np.ndarray
    closed: bool
    label: str
    params: Optional[np.ndarray] = None
    source: Optional[Callable[[float], complex]] = field(default=None, repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim != 1 or len(pts) < 2:
            raise ValueError("a polyline needs at least two points")
        if np.any(pts[1:] == pts[:-1]):
            raise ValueError("consecutive polyline points must be distinct")
        object.__setattr__(self, "points", pts)
        if self.params is not None:
            object.__setattr__(self, "params", np.asarray(self.params, dtype=float))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def parameter(self) -> np.ndarray:
        return self.params if self.params is not None else np.arange(len(self.points), dtype=float)

    @property
    def period(self) -> float:
        t = self.parameter
        return float(t[-1] - t[0] + (t[1] - t[0]))


@dataclass(frozen=True)
class AngleCheck:
    theta_star: float
    w_plane_angle: float
    z_plane_angle: float

    @property
    def difference(self) -> float:
        return abs(self.w_plane_angle - self.z_plane_angle)


def sample_branch_image(k: int, ray: complex, r_max: float, n: int,
                        r_min: float = 1e-12) -> Polyline:
    """``W_k(gamma r)`` on a log-spaced grid ``r_min <= r <= r_max``."""
    if not r_max > 0 or n < 2:
        raise ValueError("need r_max > 0 and n >= 2")
    ray = complex(ray)
    t = np.linspace(math.log(min(r_min, r_max / 10.0)), math.log(r_max), n)
    w = lambert_w_array(k, ray * np.exp(t))

    def source(s: float) -> complex:
        return lambert_w(k, ray * math.exp(s))

    return Polyline(w, False, f"W({k},{RAY_LABELS.get(ray, ray)})", t, source)


def sample_circle_image(R: float, n: int) -> Polyline:
    """Image of ``|w| = R`` under ``w exp(w)`` on a uniform grid in theta."""
    R = check_strength(R)
    if n < 64:
        raise ValueError("need n >= 64")
    theta = 2.0 * math.pi * np.arange(n) / n
    z = forward_map(R * np.exp(1j * theta))

    def source(t: float) -> complex:
        return forward_map(cmath.rect(R, t))

    return Polyline(z, True, f"Q(R={R:g})", theta, source)


def count_axis_crossings(curve: Polyline) -> list[PhaseSolution]:
    """Crossings of ``curve`` with the real and imaginary axes.

    Returned thetas are curve parameters.  With a ``source`` the crossing is
    bisected on the exact curve, otherwise interpolated along the chord.

    Raises
    ------
    UndersampledCurve
        If one segment changes the sign of both coordinates, so the order of
        the two crossings is ambiguous.
    """
    z = curve.points
    t = curve.parameter
    if curve.closed:
        a, b = z, np.roll(z, -1)
    else:
        a, b = z[:-1], z[1:]
    both = (a.real * b.real < 0) & (a.imag * b.imag < 0)
    if np.any(both):
        i = int(np.flatnonzero(both)[0])
        raise UndersampledCurve(f"segment {i} of {curve.label} crosses both axes")

    period = curve.period if curve.closed else 0.0
    found: list[tuple[PhaseSolution, bool]] = []
    for axis, y, part in ((Axis.REAL, z.imag, lambda c: c.imag),
                          (Axis.IMAG, z.real, lambda c: c.real)):
        for br in find_brackets(t, y, periodic=curve.closed, period=period):
            if br.exact is None and curve.source is not None:
                root = bisect(lambda s: part(curve.source(s)), br.lo, br.hi)
            else:
                root = br.chord_root()
            if curve.closed:
                root = math.fmod(root - t[0], period) + t[0]
            sol = PhaseSolution(float(root) + 0.0, axis)
            found.append((sol, False))
            if br.double:
                found.append((sol, True))

    found.sort(key=lambda item: item[0].sort_key())
    crossings: list[PhaseSolution] = []
    for sol, second_of_double in found:
        if (not second_of_double and crossings and crossings[-1].axis is sol.axis
                and abs(crossings[-1].theta - sol.theta) <= 1e-9):
            continue
        crossings.append(sol)

    def z_of(c: PhaseSolution) -> complex:
        if curve.source is not None:
            return complex(curve.source(c.theta))
        return complex(np.interp(c.theta, t, z.real) + 1j * np.interp(c.theta, t, z.imag))

    return tag_multiplicities(crossings, z_of)


def angle_between(a: complex, b: complex) -> float:
    """Unsigned angle in ``[0, pi]`` between two direction vectors."""
    return abs(cmath.phase(complex(b) / complex(a)))


def conformal_angle_check(R: float, sol: PhaseSolution, k: int,
                          step: float = FD_STEP) -> AngleCheck:
    """Intersection angle at ``w* = R exp(i theta*)`` measured in both planes.

    w-plane: circle tangent ``i w*`` against the tangent of the branch-``k``
    line, by central differences in ``log r``.  z-plane: tangent of the
    image curve, by central differences in theta, against the outward
    direction of the crossed ray.  A conformal map makes the two equal.

    Raises
    ------
    DegenerateTangent
        If a tangent vanishes, which happens at the critical point ``w = -1``.
    ValueError
        If branch ``k`` does not pass through ``w*``.
    """
    R = check_strength(R)
    theta = sol.theta
    w_star = cmath.rect(R, theta)
    gamma = gamma_of(R, theta)
    r_star = abs(forward_map(w_star))
    if abs(lambert_w(k, gamma * r_star) - w_star) > 1e-6 * max(1.0, R):
        raise ValueError(f"branch {k} does not pass through w={w_star!r}")

    line = (lambert_w(k, gamma * r_star * math.exp(step))
            - lambert_w(k, gamma * r_star * math.exp(-step))) / (2.0 * step)
    circle = 1j * w_star
    image = (forward_map(cmath.rect(R, theta + step))
             - forward_map(cmath.rect(R, theta - step))) / (2.0 * step)
    for name, vec in (("branch line", line), ("image curve", image)):
        if not (abs(vec) >= 1e-12) or not math.isfinite(abs(vec)):
            raise DegenerateTangent(f"{name} tangent degenerate at theta={theta!r}")
    return AngleCheck(theta, angle_between(circle, line), angle_between(image, gamma))
