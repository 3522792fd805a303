import cmath
import math

import mpmath
import numpy as np
import pytest
import scipy.special
from hypothesis import given, settings, strategies as st

from squarewell.errors import ZeroOffPrincipal
from squarewell.lambertw import branch_of, forward_map, lambert_w, lambert_w_array


def newton_w0(x, iters=60):
    # independent real oracle for W0 on x > 0
    w = math.log1p(x)
    for _ in range(iters):
        w -= (w * math.exp(w) - x) / (math.exp(w) * (1 + w))
    return w


@pytest.mark.parametrize("w, z", [(0, 0), (1, math.e), (-1, -1 / math.e)])
def test_forward_map_examples(w, z):
    assert forward_map(w) == pytest.approx(z, abs=1e-15)


def test_forward_map_array():
    w = np.array([0, 1, -1, 1j])
    assert np.allclose(forward_map(w), w * np.exp(w))


@pytest.mark.parametrize("k, z, expected", [
    (0, 0, 0),
    (0, math.e, 1),
    (-1, -1 / math.e, -1),
    (0, -1 / math.e, -1),
])
def test_lambert_w_examples(k, z, expected):
    assert abs(lambert_w(k, z) - expected) < 1e-7


def test_w0_of_one_matches_newton_oracle():
    assert lambert_w(0, 1) == pytest.approx(newton_w0(1.0), abs=1e-15)
    assert lambert_w(0, 1) == pytest.approx(0.5671432904097838, abs=1e-15)


def test_w1_of_one():
    w = lambert_w(1, 1)
    assert abs(forward_map(w) - 1) < 1e-12
    assert math.pi < w.imag < 2 * math.pi
    assert branch_of(w) == 1


def test_zero_off_principal():
    with pytest.raises(ZeroOffPrincipal):
        lambert_w(1, 0)
    with pytest.raises(ZeroOffPrincipal):
        lambert_w(-2, 0j)


def test_cut_taken_from_above():
    z = -0.5
    assert lambert_w(0, complex(z, -0.0)) == lambert_w(0, complex(z, 0.0))
    assert lambert_w(0, z).imag > 0
    assert lambert_w(-1, -0.1).imag == pytest.approx(0.0, abs=1e-15)
    assert lambert_w(1, -2.0).imag > 0


@pytest.mark.parametrize("k", range(-4, 5))
def test_matches_scipy(rng, k):
    z = (rng.uniform(-50, 50, 2000) + 1j * rng.uniform(-50, 50, 2000))
    ours = lambert_w_array(k, z)
    ref = scipy.special.lambertw(z, k)
    assert np.max(np.abs(ours - ref) / np.maximum(1, np.abs(ref))) < 1e-10


@pytest.mark.parametrize("k, z", [(0, 2 + 3j), (-1, -0.2 + 1e-3j), (2, -7 - 1j), (-3, 1e-5j)])
def test_matches_mpmath(k, z):
    ref = complex(mpmath.lambertw(z, k))
    assert abs(lambert_w(k, z) - ref) <= 1e-13 * max(1, abs(ref))


def test_near_branch_point():
    for eps in (1e-14, 1e-10, 1e-6, 1e-3):
        for sign in (1, -1):
            z = -1 / math.e + sign * eps + 1e-9j
            for k in (-1, 0, 1):
                w = lambert_w(k, z)
                assert abs(forward_map(w) - z) <= 1e-12


def test_nonstrict_returns_nan_for_zero_off_principal():
    out = lambert_w_array(1, np.array([0, 1]), strict=False)
    assert np.isnan(out[0]) and np.isfinite(out[1])


def test_branch_of_roundtrip():
    for k in range(-3, 4):
        assert branch_of(lambert_w(k, 3 - 2j)) == k


offcut = st.complex_numbers(min_magnitude=1e-6, max_magnitude=1e3, allow_nan=False,
                            allow_infinity=False).filter(lambda z: abs(z.imag) > 1e-9)


@settings(max_examples=150, deadline=None)
@given(z=offcut, k=st.integers(-3, 3))
def test_round_trip(z, k):
    w = lambert_w(k, z)
    assert abs(forward_map(w) - z) <= 1e-12 * max(1, abs(z))


@settings(max_examples=100, deadline=None)
@given(z=offcut, k=st.integers(-3, 3))
def test_conjugate_symmetry(z, k):
    a = lambert_w(-k, z.conjugate())
    b = lambert_w(k, z).conjugate()
    assert abs(a - b) <= 1e-12 * max(1, abs(b))


@settings(max_examples=50, deadline=None)
@given(z=offcut)
def test_branch_separation(z):
    ws = [lambert_w(k, z) for k in range(-3, 4)]
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            assert abs(ws[i] - ws[j]) > 1e-6


def test_real_principal_branch():
    x = np.geomspace(1e-6, 1e6, 400)
    w = lambert_w_array(0, x)
    assert np.all(np.abs(w.imag) == 0)
    assert np.all(np.diff(w.real) > 0)
    big = x >= math.e
    assert np.all(w.real[big] <= np.log(x[big]) + 1e-15)
