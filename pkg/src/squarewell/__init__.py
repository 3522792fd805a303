"""Bound states of the finite square well from the Lambert W function.

The matching conditions reduce to ``w exp(w) = gamma R`` with ``w = u + iv``
on the circle ``|w| = R``; solving it branch by branch (w-plane) or by
tracing the image of the circle (z-plane) gives the same spectrum as the
classical ``v tan v = u`` / ``v cot v = -u`` equations.
"""
from .errors import (BranchRangeTooSmall, DegenerateTangent, DomainError, NonConvergence,
                     SquareWellError, UndersampledCurve, ZeroOffPrincipal)
from .lambertw import branch_of, forward_map, lambert_w, lambert_w_array
from .model import (BoundState, Parity, WaveFunction, WellParameters, energy_from_u,
                    evaluate_derivative, evaluate_wavefunction, strength_parameter, wavefunction)
from .solver import (Axis, PhaseSolution, SolverReport, master_residual, physical_filter, solve,
                     solve_classical, solve_w_plane, solve_z_plane)
from .curves import (AngleCheck, Polyline, conformal_angle_check, count_axis_crossings,
                     sample_branch_image, sample_circle_image)
from .sweep import SweepResult, sweep

__version__ = "0.1.0"

__all__ = [
    "AngleCheck", "Axis", "BoundState", "BranchRangeTooSmall", "DegenerateTangent",
    "DomainError", "NonConvergence", "Parity", "PhaseSolution", "Polyline", "SolverReport",
    "SquareWellError", "SweepResult", "UndersampledCurve", "WaveFunction", "WellParameters",
    "ZeroOffPrincipal", "branch_of", "conformal_angle_check", "count_axis_crossings",
    "energy_from_u", "evaluate_derivative", "evaluate_wavefunction", "forward_map",
    "lambert_w", "lambert_w_array", "master_residual", "physical_filter", "sample_branch_image",
    "sample_circle_image", "solve", "solve_classical", "solve_w_plane", "solve_z_plane",
    "strength_parameter", "sweep", "wavefunction",
]
