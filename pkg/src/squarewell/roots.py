"""Bracketing and refinement helpers for sampled scalar functions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

XTOL = 1e-13


@dataclass(frozen=True)
class Bracket:
    """A root located on a sample grid.

    ``lo``/``hi`` bound a sign change; ``exact`` is set when a sample itself
    is zero; ``double`` marks a tangential touch counted twice.
    """

    lo: float
    hi: float
    exact: Optional[float] = None
    double: bool = False
    ylo: float = math.nan
    yhi: float = math.nan

    def chord_root(self) -> float:
        """Linear interpolation of the root between the bracketing samples."""
        if self.exact is not None:
            return self.exact
        return self.lo + (self.hi - self.lo) * self.ylo / (self.ylo - self.yhi)


def bisect(f: Callable[[float], float], a: float, b: float, fa: Optional[float] = None,
           xtol: float = XTOL, max_iter: int = 200) -> float:
    """Bisection on a bracket ``[a, b]`` with ``f(a) * f(b) <= 0``."""
    if fa is None:
        fa = f(a)
    if fa == 0.0:
        return a
    sa = math.copysign(1.0, fa)
    for _ in range(max_iter):
        if abs(b - a) <= xtol:
            break
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = f(m)
        if fm == 0.0:
            return m
        if math.copysign(1.0, fm) == sa:
            a = m
        else:
            b = m
    return 0.5 * (a + b)


def newton_polish(f: Callable[[float], float], df: Callable[[float], float], x: float,
                  lo: float, hi: float) -> float:
    """One Newton step from ``x``, kept only if it stays in ``[lo, hi]`` and improves ``|f|``."""
    fx = f(x)
    d = df(x)
    if fx == 0.0 or d == 0.0 or not math.isfinite(d):
        return x
    xn = x - fx / d
    if lo <= xn <= hi and abs(f(xn)) <= abs(fx):
        return xn
    return x


def _golden_min(f: Callable[[float], float], a: float, b: float, iters: int = 80) -> tuple[float, float]:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if min(fc, fd) < 0.0:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    if fc < 0.0 or fd < 0.0:
        return (c, fc) if fc <= fd else (d, fd)
    x = 0.5 * (a + b)
    return x, f(x)


def find_brackets(x: np.ndarray, y: np.ndarray, *, periodic: bool = False,
                  period: float = 0.0, func: Optional[Callable[[float], float]] = None,
                  touch_tol: float = 0.0) -> list[Bracket]:
    """Locate the roots of a sampled function.

    Sign changes between consecutive nonzero samples give brackets; a zero
    sample flanked by opposite signs is an exact root and one flanked by equal
    signs is a tangential double root.  When ``func`` is given, local minima
    of ``|y|`` without a sign change are searched for hidden pairs of roots
    and for near-tangencies with ``|y| <= touch_tol``.

    For ``periodic`` grids the segment from the last sample wraps to
    ``x[0] + period``.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    sign = np.sign(y)
    nz = np.flatnonzero(sign != 0)
    out: list[Bracket] = []
    if len(nz) == 0:
        return out

    def xs(i: int) -> float:
        # sample abscissa, unwrapped past the end of a periodic grid
        return float(x[i % n] + (i // n) * period)

    pairs = list(zip(nz[:-1], nz[1:]))
    if periodic:
        pairs.append((nz[-1], nz[0] + n))
    elif nz[0] > 0:
        out.extend(Bracket(xs(i), xs(i), exact=xs(i)) for i in range(nz[0]))
    for i, j in pairs:
        si, sj = sign[i % n], sign[j % n]
        if j - i > 1:
            zeros = [xs(m) for m in range(i + 1, j)]
            mid = zeros[len(zeros) // 2]
            out.append(Bracket(xs(i), xs(j), exact=mid, double=(si == sj)))
            continue
        if si != sj:
            out.append(Bracket(xs(i), xs(j), ylo=float(y[i % n]), yhi=float(y[j % n])))
    if not periodic and nz[-1] < n - 1:
        out.extend(Bracket(xs(i), xs(i), exact=xs(i)) for i in range(nz[-1] + 1, n))

    if func is not None:
        out.extend(_hidden_pairs(x, y, sign, periodic, period, func, touch_tol, xs))
    out.sort(key=lambda b: (b.exact if b.exact is not None else b.lo))
    return out


def _hidden_pairs(x, y, sign, periodic, period, func, touch_tol, xs) -> list[Bracket]:
    n = len(x)
    prev = np.roll(y, 1)
    nxt = np.roll(y, -1)
    s = sign
    cand = ((s != 0) & (np.sign(prev) == s) & (np.sign(nxt) == s)
            # strict on the left so a two-sample plateau yields one candidate
            & (np.abs(y) < np.abs(prev)) & (np.abs(y) <= np.abs(nxt)))
    if not periodic:
        cand[0] = cand[-1] = False
    # vertex of the parabola through the three samples; skip minima that
    # clearly stay away from zero
    vertex = y - (nxt - prev) ** 2 / (8.0 * np.where(prev - 2 * y + nxt == 0, np.inf, prev - 2 * y + nxt))
    cand &= s * vertex <= 0.5 * np.abs(y)
    found: list[Bracket] = []
    for i in np.flatnonzero(cand):
        si = float(s[i])
        lo = xs(n - 1) - period if i == 0 else xs(i - 1)
        hi = xs(i + 1)
        xm, fm = _golden_min(lambda t: si * func(t), lo, hi)
        if fm < 0.0:
            found.append(Bracket(lo, xm))
            found.append(Bracket(xm, hi))
        elif fm <= touch_tol:
            found.append(Bracket(xm, xm, exact=xm, double=True))
    return found
