"""State counts and energy sensitivity over a range of strength parameters."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import Parity, check_strength
from .solver import solve


@dataclass
class SweepResult:
    R_grid: list[float]
    state_counts: list[int]
    odd_counts: list[int]
    energies: list[list[float]]
    dE_dR: list[list[Optional[float]]]

    @property
    def monotone(self) -> bool:
        return all(a <= b for a, b in zip(self.state_counts, self.state_counts[1:]))

    def to_dict(self) -> dict:
        return {
            "R_grid": self.R_grid,
            "state_counts": self.state_counts,
            "odd_counts": self.odd_counts,
            "energies": self.energies,
            "dE_dR": self.dE_dR,
        }


def sweep(R_min: float, R_max: float, steps: int, method: str = "classical") -> SweepResult:
    """Solve on ``steps`` evenly spaced values of R in ``[R_min, R_max]``.

    ``dE_dR[i][n]`` is the central difference of level ``n``'s binding
    energy (natural units, ``E = u**2``) across the neighbouring grid points,
    one-sided at the ends or where the level is missing at a neighbour, and
    ``None`` where neither neighbour has it.
    """
    R_min, R_max = check_strength(R_min), check_strength(R_max)
    if not R_min < R_max:
        raise ValueError("sweep needs R_min < R_max")
    if steps < 2:
        raise ValueError("sweep needs at least two steps")
    grid = [float(r) for r in np.linspace(R_min, R_max, steps)]
    energies, counts, odd = [], [], []
    for R in grid:
        report = solve(R, method)
        energies.append([s.energy for s in report.physical])
        counts.append(len(report.physical))
        odd.append(sum(1 for s in report.physical if s.parity is Parity.ODD))

    sens: list[list[Optional[float]]] = []
    for i, levels in enumerate(energies):
        row = []
        for n in range(len(levels)):
            lo = i - 1 if i > 0 and n < len(energies[i - 1]) else i
            hi = i + 1 if i + 1 < len(grid) and n < len(energies[i + 1]) else i
            if lo == hi:
                row.append(None)
            else:
                row.append((energies[hi][n] - energies[lo][n]) / (grid[hi] - grid[lo]))
        sens.append(row)
    result = SweepResult(grid, counts, odd, energies, sens)
    if not result.monotone:
        raise ArithmeticError("state count decreased along the sweep")
    return result


def first_odd_cell(result: SweepResult) -> Optional[int]:
    """Index of the first grid point that has an odd state."""
    for i, c in enumerate(result.odd_counts):
        if c > 0:
            return i
    return None


def threshold_cell(grid: list[float], value: float = math.pi / 2) -> Optional[int]:
    """Index ``i`` with ``grid[i-1] < value <= grid[i]``."""
    for i in range(1, len(grid)):
        if grid[i - 1] < value <= grid[i]:
            return i
    return None
