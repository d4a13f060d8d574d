"""Smoke tests for the Python bindings: a few frozen values per module."""

import math

import pytest

import fanoqed as fq


def make_spec(t=0.5, sigma=0.2):
    s = fq.SystemSpec()
    s.t_bg = t
    s.sigma = complex(sigma, 0.0)
    return fq.validated(s)


def test_constraints_pass_at_machine_precision():
    s = make_spec()
    bg = fq.build_two_port_background(s.t_bg, s.r_sign, s.phi)
    coup = fq.solve_mirror_coupling(s)
    rep = fq.validate_constraints(bg, coup, s.sigma)
    assert rep.passed
    assert rep.max_residual() < 1e-12
    assert set(rep.residuals) >= {"unitarity", "symmetry", "cd_star"}


def test_single_photon_features_and_unitarity():
    s = make_spec()
    feats = fq.fano_features(s)
    assert feats.k_zero == pytest.approx(0.65358984, abs=1e-8)
    assert feats.k_peak == pytest.approx(1.11547005, abs=1e-8)
    assert abs(fq.s1_amplitude(s, 1, 1, 1.0)) ** 2 == pytest.approx(
        1 - s.t_bg**2, abs=1e-12
    )
    assert fq.unitarity_residual(s, 0.0, 2.0, 2001) < 1e-12


def test_two_photon_frozen_values():
    s = make_spec(t=0.0)
    k = fq.connected_kernel(s, 1, 1, 1, 1, 1.0, 1.0, 1.0)
    assert k.real == pytest.approx(2 / (math.pi * 0.2), rel=1e-10)
    assert abs(k.imag) < 1e-13

    assert abs(fq.bound_state(make_spec(), 1, 1, 1.0, 1.0, 0.0, 0.0)) == (
        pytest.approx(1 / (math.sqrt(2) * math.pi), rel=1e-12)
    )
    assert fq.g2_zero_closed(make_spec(t=1.0), 2.0) == pytest.approx(
        1 / (2 * math.pi**2), rel=1e-12
    )
    assert fq.g2_zero_closed(make_spec(t=0.0), 2.3) == 0.0

    tr = fq.g2_trace(make_spec(), 1.0, 1.0, 10.0, 11)
    assert tr.points[0].g2 == pytest.approx(2 * fq.g2_zero_closed(make_spec(), 2.0),
                                            rel=1e-12)
    # on-resonance |t11|^2 = 1 - t^2 = 0.75, so the plateau is (0.75^2)/pi^2
    assert tr.baseline == pytest.approx(0.5625 / math.pi**2, rel=1e-12)


def test_lattice_oracle_quick_run():
    spec = fq.LatticeSpec()
    m = fq.MicroscopicParams()
    v = fq.direct_coupling_for_background(0.0)
    xi1 = math.sqrt(0.2 * (1 + v * v / 4))
    m.xi = [xi1, xi1]
    m.v = [[0.0, v], [v, 0.0]]
    spec.micro = m
    spec.modes_per_channel = 135
    spec.window = 2.0
    spec.packet_width = 0.066
    res = fq.oracle_single_transmission(spec)
    assert res.rms11 < 0.1
    assert res.rms21 < 0.1
    assert fq.compare_with_analytic(res, 0.1).passed
