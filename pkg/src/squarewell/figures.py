"""Figure data for the w-plane and z-plane pictures: CSV polylines plus SVG."""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .curves import RAY_LABELS, Polyline, sample_branch_image, sample_circle_image
from .lambertw import forward_map
from .serialize import crossings_csv, labelled_csv, polyline_csv
from .solver import GAMMAS, solve_w_plane, solve_z_plane

MARGIN = 0.05
MAX_ZOOMS = 3
# crossings whose |z| differ by more than this factor start a new zoom level
ZOOM_GAP = 4.0

_COLOURS = {"circle": "#000000", "curve": "#1f4e9c", "axes": "#888888",
            "pos_real": "#c0392b", "neg_real": "#e67e22", "pos_imag": "#27ae60", "neg_imag": "#8e44ad"}


@dataclass(frozen=True)
class Window:
    x0: float
    x1: float
    y0: float
    y1: float

    @classmethod
    def square(cls, half: float) -> "Window":
        return cls(-half, half, -half, half)

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4 or not (parts[0] < parts[1] and parts[2] < parts[3]):
            raise ValueError("zoom window must be x0,x1,y0,y1 with x0<x1 and y0<y1")
        return cls(*parts)


def zoom_windows(R: float) -> list[Window]:
    """Successively magnified square windows around the origin.

    Crossing points are grouped by ``|z|``; each gap wider than
    :data:`ZOOM_GAP` between neighbouring magnitudes starts a new window
    sized to the points below it.
    """
    mags = sorted({abs(forward_map(c.w(R))) for c in solve_z_plane(R).all_crossings}, reverse=True)
    windows = []
    for big, small in zip(mags, mags[1:]):
        if big > ZOOM_GAP * small:
            windows.append(Window.square(1.25 * small))
    return windows[:MAX_ZOOMS]


def _bounds(lines: Sequence[Polyline]) -> Window:
    pts = np.concatenate([ln.points for ln in lines])
    return Window(pts.real.min(), pts.real.max(), pts.imag.min(), pts.imag.max())


def render_svg(lines: Sequence[tuple[str, Polyline]], window: Window, title: str,
               size: int = 600) -> str:
    """SVG of ``lines`` clipped to ``window`` with a 5% margin on each side."""
    dx, dy = window.x1 - window.x0, window.y1 - window.y0
    vx0, vy0 = window.x0 - MARGIN * dx, -(window.y1 + MARGIN * dy)
    vw, vh = dx * (1 + 2 * MARGIN), dy * (1 + 2 * MARGIN)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{vx0:.9g} {vy0:.9g} {vw:.9g} {vh:.9g}" preserveAspectRatio="xMidYMid meet">',
        f"<title>{title}</title>",
        f'<clipPath id="win"><rect x="{window.x0:.9g}" y="{-window.y1:.9g}" '
        f'width="{dx:.9g}" height="{dy:.9g}"/></clipPath>',
        '<g clip-path="url(#win)" fill="none" stroke-width="1.5">',
    ]
    for style, line in lines:
        pts = line.points
        if line.closed:
            pts = np.append(pts, pts[:1])
        # y is flipped: SVG grows downward
        coords = " ".join(f"{p.real:.9g},{-p.imag:.9g}" for p in pts)
        colour = _COLOURS.get(style, "#000000")
        out.append(f'<polyline stroke="{colour}" vector-effect="non-scaling-stroke" '
                   f'points="{coords}"><title>{line.label}</title></polyline>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _axes(window: Window) -> list[Polyline]:
    return [
        Polyline(np.array([window.x0, window.x1], dtype=complex), False, "real axis"),
        Polyline(1j * np.array([window.y0, window.y1]), False, "imaginary axis"),
    ]


def _tag(R: float) -> str:
    return f"fsw_R{R:g}"


def write_w_plane(R: float, out_dir: Path, n: int = 2000,
                  zoom: Optional[Window] = None) -> list[Path]:
    """Circle ``|w| = R`` and the images of all four rays for every contributing branch."""
    report = solve_w_plane(R)
    stem = f"{_tag(R)}_w_plane"
    theta = 2.0 * math.pi * np.arange(n) / n
    circle = Polyline(R * np.exp(1j * theta), True, f"|w|={R:g}", theta)
    lines: list[tuple[str, Polyline]] = [("circle", circle)]
    written = [_write(out_dir / f"{stem}_circle.csv", polyline_csv(circle.points, circle.params))]
    r_max = 100.0 * R * math.exp(R)
    for k in report.branches:
        for gamma in GAMMAS:
            ray = RAY_LABELS[gamma]
            line = sample_branch_image(k, gamma, r_max, n)
            lines.append((ray, line))
            written.append(_write(out_dir / f"{stem}_k{k}_{ray}.csv",
                                  polyline_csv(line.points, line.params)))
    written.append(_write(out_dir / f"{stem}_crossings.csv", crossings_csv(report)))
    window = zoom or Window.square(1.5 * R)
    written.append(_write(out_dir / f"{stem}.svg",
                          render_svg(lines, window, f"w-plane, R={R:g}")))
    return written


def write_z_plane(R: float, out_dir: Path, n: Optional[int] = None,
                  zoom: Optional[Window] = None) -> list[Path]:
    """Image of the circle under ``w exp(w)``, the axes, and zoomed views."""
    n = n or max(4096, math.ceil(512 * R))
    curve = sample_circle_image(R, n)
    stem = f"{_tag(R)}_z_plane"
    full = _bounds([curve])
    written = [_write(out_dir / f"{stem}_curve.csv", polyline_csv(curve.points, curve.params))]
    written.append(_write(out_dir / f"{stem}_axes.csv", labelled_csv(_axes(full))))
    written.append(_write(out_dir / f"{stem}_crossings.csv", crossings_csv(solve_z_plane(R))))

    views = [("", full)] if zoom is None else [("_zoom", zoom)]
    if zoom is None:
        views += [(f"_zoom{i + 1}", w) for i, w in enumerate(zoom_windows(R))]
    for suffix, window in views:
        lines = [("axes", a) for a in _axes(window)] + [("curve", curve)]
        written.append(_write(out_dir / f"{stem}{suffix}.svg",
                              render_svg(lines, window, f"z-plane, R={R:g}{suffix}")))
    return written


def _write(path: Path, text: str) -> Path:
    path.write_text(text)
    return path
