"""Multi-branch complex Lambert W and its forward map ``w -> w*exp(w)``.

Branch numbering follows Corless, Gonnet, Hare, Jeffrey and Knuth (1996).
Branches 0 and -1 share the branch point ``z = -1/e`` (``w = -1``); the cut
of branch 0 is ``(-inf, -1/e]`` and the cut of every other branch is
``(-inf, 0]``.  Points lying exactly on a cut take the limit from above
(``Im z -> 0+``), so ``-0.0`` imaginary parts are treated as ``+0.0``.

Evaluation is vectorised over numpy arrays: each point gets a seed (branch
point series, Pade approximant, or the asymptotic expansion) and is refined
with Halley's method.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import NonConvergence, ZeroOffPrincipal

__all__ = [
    "forward_map",
    "lambert_w",
    "lambert_w_array",
    "branch_of",
    "RESIDUAL_TOL",
    "MAX_ITER",
]

RESIDUAL_TOL = 1e-12
MAX_ITER = 64

_INV_E = math.exp(-1.0)
_TWO_PI_I = 2j * math.pi
_BRANCH_PT_RADIUS = 0.3


def forward_map(w):
    """Return ``w * exp(w)`` for a complex scalar or array."""
    if np.ndim(w) == 0:
        w = complex(w)
        return w * cmath.exp(w)
    w = np.asarray(w, dtype=complex)
    return w * np.exp(w)


def _above_cut(z: np.ndarray) -> np.ndarray:
    # -0.0 imaginary parts would otherwise select the lower side of the cut
    return np.where(z.imag == 0.0, z.real + 0.0j, z)


def _branch_point_series(p: np.ndarray) -> np.ndarray:
    # W = -1 + p - p^2/3 + 11/72 p^3 - 43/540 p^4, p = sqrt(2(ez + 1))
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)))


def _pade0(z: np.ndarray) -> np.ndarray:
    # (3, 2) Pade approximant of W_0 about z = 0
    num = z * (1.0 + z * (1.9 + z * 0.28333333333333333))
    den = 1.0 + z * (2.9 + z * 1.6833333333333333)
    return num / den


def _asymptotic(z: np.ndarray, k: int) -> np.ndarray:
    l1 = np.log(z) + _TWO_PI_I * k
    l2 = np.log(l1)
    return l1 - l2 + l2 / l1


def _seed(k: int, z: np.ndarray) -> np.ndarray:
    w = np.empty_like(z)
    near_bp = np.abs(z + _INV_E) < _BRANCH_PT_RADIUS
    p = np.sqrt(2.0 * (math.e * z + 1.0))
    if k == 0:
        pade = ((~near_bp) & (z.real > -1.0) & (z.real < 1.5) & (np.abs(z.imag) < 1.0)
                & (z.real > -2.5 * np.abs(z.imag) - 0.2))
        asy = ~(near_bp | pade)
        w[near_bp] = _branch_point_series(p[near_bp])
        w[pade] = _pade0(z[pade])
        w[asy] = _asymptotic(z[asy], 0)
        return w
    if k == -1:
        # on and above the cut, branch -1 meets branch 0 at the branch point
        near = near_bp & (z.imag >= 0.0)
    elif k == 1:
        near = near_bp & (z.imag < 0.0)
    else:
        near = np.zeros(z.shape, dtype=bool)
    w[near] = _branch_point_series(-p[near])
    w[~near] = _asymptotic(z[~near], k)
    return w


def _halley(w: np.ndarray, z: np.ndarray, max_iter: int) -> np.ndarray:
    active = np.ones(w.shape, dtype=bool)
    for _ in range(max_iter):
        if not active.any():
            break
        wa, za = w[active], z[active]
        ew = np.exp(wa)
        f = wa * ew - za
        wp1 = wa + 1.0
        # w = -1 exactly only at the branch point, where f is already zero
        wp1 = np.where(wp1 == 0.0, 1e-300, wp1)
        dw = f / (ew * wp1 - (wa + 2.0) * f / (2.0 * wp1))
        dw = np.where(f == 0.0, 0.0, dw)
        wn = wa - dw
        w[active] = wn
        done = np.abs(dw) <= 4.0 * np.finfo(float).eps * (1.0 + np.abs(wn))
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return w


def lambert_w_array(k: int, z, *, tol: float = RESIDUAL_TOL, max_iter: int = MAX_ITER,
                    strict: bool = True) -> np.ndarray:
    """Branch ``k`` of Lambert W evaluated elementwise on ``z``.

    Parameters
    ----------
    k : int
        Branch index.
    z : array_like
        Complex arguments.
    tol : float
        Relative residual tolerance, ``|w e^w - z| <= tol * max(1, |z|)``.
    max_iter : int
        Halley iteration cap.
    strict : bool
        When true, raise instead of returning NaN for failed points.

    Returns
    -------
    ndarray of complex
    """
    k = int(k)
    z = _above_cut(np.asarray(z, dtype=complex))
    shape = z.shape
    z = z.ravel().copy()
    out = np.full(z.shape, np.nan + 0j)

    zero = z == 0
    if zero.any():
        if k != 0:
            if strict:
                raise ZeroOffPrincipal(f"W_{k}(0) diverges")
        else:
            out[zero] = 0.0
    live = ~zero & np.isfinite(z)
    if live.any():
        zl = z[live]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            w = _halley(_seed(k, zl), zl, max_iter)
            resid = np.abs(w * np.exp(w) - zl)
        bad = ~(resid <= tol * np.maximum(1.0, np.abs(zl)))
        if bad.any():
            if strict:
                first = zl[bad][0]
                raise NonConvergence(
                    f"Lambert W branch {k} failed to converge at z={first!r}"
                )
            w[bad] = np.nan
        out[live] = w
    return out.reshape(shape)


def lambert_w(k: int, z: complex, *, tol: float = RESIDUAL_TOL,
              max_iter: int = MAX_ITER) -> complex:
    """Branch ``k`` of Lambert W at a single complex point.

    Raises
    ------
    ZeroOffPrincipal
        If ``z == 0`` and ``k != 0``.
    NonConvergence
        If the residual tolerance is not met within ``max_iter`` steps.
    """
    return complex(lambert_w_array(k, np.array([z], dtype=complex), tol=tol,
                                   max_iter=max_iter)[0])


def branch_of(w: complex, *, search: int = 3, atol: float = 1e-8) -> int:
    """Return the branch index ``k`` with ``W_k(w e^w) == w``.

    The search covers a window of branches around ``Im(w) / (2 pi)``.
    """
    w = complex(w)
    z = forward_map(w)
    if z == 0:
        return 0
    centre = int(round(w.imag / (2.0 * math.pi)))
    best_k, best_err = None, math.inf
    for k in range(centre - search, centre + search + 1):
        cand = complex(lambert_w_array(k, np.array([z]), strict=False)[0])
        err = abs(cand - w)
        if err < best_err:
            best_k, best_err = k, err
    if best_k is None or best_err > atol * max(1.0, abs(w)):
        raise ValueError(f"no branch reproduces w={w!r}")
    return best_k
