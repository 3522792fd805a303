"""JSON and CSV encodings of solver reports, sweeps and polylines.

Floats are written with 17 significant digits so every double survives a
round trip.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Optional, Sequence

from .model import BoundState, Parity, WellParameters
from .solver import Axis, PhaseSolution, SolverReport

ELECTRON_VOLT = 1.602176634e-19

STATE_COLUMNS = ["n", "parity", "theta", "u", "v", "energy"]
PHYSICAL_COLUMNS = ["energy_J", "energy_eV"]
CROSSING_COLUMNS = ["theta", "axis", "multiplicity", "u", "v", "parity", "energy"]


def fmt(x: Optional[float]) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return format(float(x), ".17g")


def _state_dict(s: BoundState) -> dict:
    return {"n": s.level_index, "parity": s.parity.value, "u": s.u, "v": s.v,
            "theta": s.theta, "E": s.energy}


def _state_from(d: dict) -> BoundState:
    return BoundState(Parity(d["parity"]), d["u"], d["v"], d["theta"], d["E"], d["n"])


def report_to_dict(report: SolverReport) -> dict:
    return {
        "R": report.R,
        "method": report.method,
        "crossings": [{"theta": c.theta, "axis": c.axis.value, "mult": c.multiplicity_tag,
                       "branch": c.branch} for c in report.all_crossings],
        "states": [_state_dict(s) for s in report.physical],
        "marginal": [_state_dict(s) for s in report.marginal],
        "residuals": list(report.residuals),
        "residual_max": report.residual_max,
        "branches": list(report.branches),
    }


def report_from_dict(d: dict) -> SolverReport:
    crossings = [PhaseSolution(c["theta"], Axis(c["axis"]), c["mult"], c.get("branch"))
                 for c in d["crossings"]]
    return SolverReport(
        R=d["R"],
        method=d["method"],
        all_crossings=crossings,
        physical=[_state_from(s) for s in d["states"]],
        residuals=list(d.get("residuals", [])),
        marginal=[_state_from(s) for s in d.get("marginal", [])],
        branches=tuple(d.get("branches", ())),
    )


def add_physical_energies(doc: dict, well: WellParameters) -> dict:
    """Attach SI energies (joules and electron-volts) to every state."""
    for s in doc["states"]:
        joules = s["u"] ** 2 * well.energy_scale
        s["energy_J"] = joules
        s["energy_eV"] = joules / ELECTRON_VOLT
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def states_csv(report: SolverReport, well: Optional[WellParameters] = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(STATE_COLUMNS + (PHYSICAL_COLUMNS if well else []))
    for s in report.physical:
        row = [s.level_index, s.parity.value, fmt(s.theta), fmt(s.u), fmt(s.v), fmt(s.energy)]
        if well:
            joules = s.u ** 2 * well.energy_scale
            row += [fmt(joules), fmt(joules / ELECTRON_VOLT)]
        writer.writerow(row)
    return buf.getvalue()


def crossings_csv(report: SolverReport) -> str:
    """Full-circle crossing table; parity and energy only on physical rows."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CROSSING_COLUMNS)
    by_theta = {s.theta: s for s in report.physical}
    for c in report.all_crossings:
        s = by_theta.get(c.theta)
        u, v = report.R * math.cos(c.theta), report.R * math.sin(c.theta)
        writer.writerow([fmt(c.theta), c.axis.value, c.multiplicity_tag, fmt(u), fmt(v),
                         s.parity.value if s else "", fmt(s.energy) if s else ""])
    return buf.getvalue()


def polyline_csv(points: Sequence[complex], params: Optional[Sequence[float]] = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "x", "y"])
    for i, p in enumerate(points):
        t = params[i] if params is not None else float(i)
        writer.writerow([fmt(t), fmt(p.real), fmt(p.imag)])
    return buf.getvalue()


def labelled_csv(lines) -> str:
    """Several polylines in one table, told apart by a ``label`` column."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["label", "t", "x", "y"])
    for line in lines:
        for t, p in zip(line.parameter, line.points):
            writer.writerow([line.label, fmt(t), fmt(p.real), fmt(p.imag)])
    return buf.getvalue()
