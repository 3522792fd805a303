import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from squarewell.errors import DomainError
from squarewell.model import (BoundState, Parity, WellParameters, energy_from_u,
                              evaluate_derivative, evaluate_wavefunction, strength_parameter,
                              wavefunction)
from squarewell.solver import solve_classical


@pytest.mark.parametrize("mass, L, depth, hbar, R", [
    (0.5, 1.0, 25.0, 1.0, 5.0),
    (0.5, 2.0, 25.0, 1.0, 10.0),
])
def test_strength_examples(mass, L, depth, hbar, R):
    assert strength_parameter(WellParameters(mass, L, depth, hbar)) == pytest.approx(R, rel=1e-15)


def test_strength_electron_in_one_ev_well():
    # sqrt(2 * 9.10938e-31 * 1.60218e-19) * 5e-10 / 1.05457e-34, worked by hand
    well = WellParameters(9.10938e-31, 5e-10, 1.60218e-19, 1.05457e-34)
    assert well.strength == pytest.approx(2.5616, abs=1e-3)


@pytest.mark.parametrize("field", ["mass", "half_width", "depth", "hbar"])
@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_invalid_parameters(field, bad):
    kwargs = dict(mass=1.0, half_width=1.0, depth=1.0, hbar=1.0)
    kwargs[field] = bad
    with pytest.raises(DomainError):
        WellParameters(**kwargs)


def test_energy_from_u_endpoints():
    well = WellParameters(0.5, 1.0, 25.0)
    assert energy_from_u(well, 0.0) == 0.0
    assert energy_from_u(well, 5.0) == pytest.approx(well.depth)
    with pytest.raises(DomainError):
        energy_from_u(well, -0.1)
    with pytest.raises(DomainError):
        energy_from_u(well, 5.1)


def test_ground_state_energy_natural_units():
    well = WellParameters.natural(5.0)
    assert energy_from_u(well, 4.827) == pytest.approx(23.30, abs=0.01)
    ground = solve_classical(5.0).physical[0]
    assert ground.energy == pytest.approx(23.2932, abs=1e-4)


@settings(max_examples=50, deadline=None)
@given(c=st.floats(1e-3, 1e3))
def test_unit_invariance(c):
    base = WellParameters(0.5, 1.0, 25.0)
    scaled = WellParameters(0.5 * c, 1.0, 25.0 / c)
    assert scaled.strength == pytest.approx(base.strength, rel=1e-12)
    assert energy_from_u(scaled, 3.0) == pytest.approx(energy_from_u(base, 3.0) / c, rel=1e-12)


def test_energy_ordering_and_parity_alternation():
    states = solve_classical(12.0).physical
    energies = [s.energy for s in states]
    assert all(a > b for a, b in zip(energies, energies[1:]))
    expected = [Parity.EVEN if n % 2 == 0 else Parity.ODD for n in range(len(states))]
    assert [s.parity for s in states] == expected
    assert [s.level_index for s in states] == list(range(len(states)))


@pytest.fixture(scope="module")
def r5_states():
    return solve_classical(5.0).physical


def test_coefficient_symmetry(r5_states):
    well = WellParameters.natural(5.0)
    for s in r5_states:
        wf = wavefunction(s, well)
        eps = 1 if s.parity is Parity.EVEN else -1
        assert wf.B == pytest.approx(eps * wf.A, abs=1e-15)
        assert wf.D == pytest.approx(eps * wf.C, abs=1e-15)
        assert wf.A.imag == 0 and wf.A.real > 0
        assert wf.epsilon == eps


@pytest.mark.parametrize("level", range(4))
def test_continuity_at_walls(r5_states, level):
    well = WellParameters.natural(5.0)
    wf = wavefunction(r5_states[level], well)
    xs = np.linspace(-3, 3, 2001)
    scale = np.max(np.abs(evaluate_wavefunction(wf, xs)))
    dscale = np.max(np.abs(evaluate_derivative(wf, xs)))
    for x in (-1.0, 1.0):
        jump = evaluate_wavefunction(wf, x, side=-1) - evaluate_wavefunction(wf, x, side=1)
        djump = evaluate_derivative(wf, x, side=-1) - evaluate_derivative(wf, x, side=1)
        assert abs(jump) <= 1e-10 * scale
        assert abs(djump) <= 1e-10 * dscale


@pytest.mark.parametrize("level", range(4))
def test_normalisation_by_quadrature(r5_states, level):
    wf = wavefunction(r5_states[level], WellParameters.natural(5.0))

    def density(x):
        return abs(evaluate_wavefunction(wf, x)) ** 2

    total = sum(quad(density, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
                for a, b in ((-np.inf, -1), (-1, 1), (1, np.inf)))
    assert total == pytest.approx(1.0, abs=1e-8)


def test_parity_of_values(r5_states):
    wf_even = wavefunction(r5_states[0], WellParameters.natural(5.0))
    wf_odd = wavefunction(r5_states[1], WellParameters.natural(5.0))
    x = np.linspace(0, 4, 101)
    assert np.allclose(evaluate_wavefunction(wf_even, x), evaluate_wavefunction(wf_even, -x), atol=1e-14)
    assert np.allclose(evaluate_wavefunction(wf_odd, x), -evaluate_wavefunction(wf_odd, -x), atol=1e-14)


def test_decay_far_away(r5_states):
    wf = wavefunction(r5_states[3], WellParameters.natural(5.0))
    assert abs(evaluate_wavefunction(wf, 200.0)) < 1e-60
    assert abs(evaluate_wavefunction(wf, -1e6)) == 0.0


def test_threshold_state_rejected():
    s = BoundState(Parity.EVEN, 0.0, 1.0, math.pi / 2, 0.0, 0)
    with pytest.raises(DomainError):
        wavefunction(s, WellParameters.natural(1.0))
