"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

try:
    import kdvlri as k
except ImportError:
    import _core as k  # cmake build tree on PYTHONPATH

TWO_PI = 2.0 * math.pi


def rough_field(max_mode=32, s=0.0, phase=None, seed=3):
    spec = k.RoughDataSpec(
        s=s, phase=phase or k.Phase.random_unit, seed=seed, max_mode=max_mode
    )
    return k.generate(spec, TWO_PI)


def test_field_numpy_roundtrip():
    coeffs = np.zeros(7, dtype=complex)
    coeffs[3 + 2] = 0.5 - 0.25j
    coeffs[3 - 2] = 0.5 + 0.25j
    f = k.SpectralField(TWO_PI, coeffs, real_flagged=True)
    assert f.max_mode == 3
    assert f.is_real
    np.testing.assert_array_equal(f.coeffs(), coeffs)
    assert f.coeff(2) == 0.5 - 0.25j


def test_generate_and_norms():
    f = rough_field(max_mode=64, s=-0.25, phase=k.Phase.unit)
    assert f.coeff(0) == 0
    assert f.coeff(1) == pytest.approx(0.1)
    # single mode: h_norm is <k>^s
    g = k.SpectralField(1.0, np.array([0, 0, 0, 1.0, 0, 0, 0], dtype=complex))
    assert k.h_norm(g, -0.5) == pytest.approx((1 + 0) ** -0.25)  # k=0 mode: <0>=1
    assert k.h_norm(f, -0.5) < k.h_norm(f, 0.0)


def test_step_matches_oracle():
    u = rough_field(max_mode=32)
    a = k.lri_step(u, 1e-3, 16)
    b = k.lri_step_oracle(u, 1e-3, 16)
    diff = np.abs(a.coeffs() - b.coeffs()).max()
    assert diff <= 1e-12 * max(a.l2_norm(), 1.0)


def test_evolve_conserves_mean_and_realness():
    phi = rough_field(max_mode=64)
    cfg = k.SchemeConfig(tau=2.0**-6, horizon=0.25, filter_n=16, mode_cap=64)
    traj = k.evolve(phi, cfg, k.Scheme.semi_discrete, snapshot_stride=4)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(0.25)
    final = traj.states[-1]
    assert final.coeff(0) == 0
    assert final.is_real


def test_choose_filter_power_law():
    assert k.choose_filter(2.0**-16, 0.0, power_of_two=True) == 256
    assert k.choose_filter(2.0**-20, -0.25, power_of_two=True) == 256


def test_zero_mean_reduction_roundtrip():
    coeffs = np.zeros(9, dtype=complex)
    coeffs[4] = 3.0
    phi = k.SpectralField(TWO_PI, coeffs, real_flagged=True)
    m, tilde = k.zero_mean_split(phi)
    assert m == 3.0
    assert tilde.l2_norm() == 0.0
    back = k.recompose(tilde, m, 0.7)
    assert back.coeff(0) == 3.0


def test_dense_output_endpoints():
    u = rough_field(max_mode=16)
    tau = 1e-2
    assert np.array_equal(k.dense_output(u, 0.0, tau, 8).coeffs(), u.coeffs())
    full = k.dense_output(u, tau, tau, 8)
    step = k.lri_step(u, tau, 8)
    np.testing.assert_array_equal(full.coeffs(), step.coeffs())


def test_rescaling_inequality_spot():
    f = rough_field(max_mode=32)._rescaled if False else None
    phi = k.generate(k.RoughDataSpec(s=0.0, phase=k.Phase.random_unit, seed=9, max_mode=32), 1.0)
    for lam in (1, 2, 4):
        lf = k.rescale(phi, lam)
        for s in (-0.5, -0.25, 0.0):
            mid = k.h_norm_lambda(lf, s)
            base = k.h_norm(phi, s)
            assert lam**-1.5 * base * (1 - 1e-12) <= mid <= lam ** (-1.5 - s) * base * (1 + 1e-12)


def test_fit_and_theory_rates():
    assert k.theory_rate(0.0) == pytest.approx(0.25)
    assert k.fit_rate([(1.0, 1.0), (0.5, 0.5)]) == pytest.approx(1.0)


def test_blowup_raises():
    spec = k.RoughDataSpec(s=0.0, phase=k.Phase.unit, amplitude=1e6, max_mode=32)
    phi = k.generate(spec, TWO_PI)
    cfg = k.SchemeConfig(tau=0.5, horizon=8.0, filter_n=32, mode_cap=32)
    with pytest.raises(RuntimeError):
        k.evolve(phi, cfg, k.Scheme.semi_discrete, snapshot_stride=1)
