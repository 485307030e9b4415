"""Potential matrix, adiabatic surfaces, and sombrero geometry."""

import math

import numpy as np
import pytest

from cavityjt import (
    ModelParams,
    adiabatic_surfaces,
    correction_terms,
    coupling_gain,
    diabatic_potential,
    surface_geometry,
)
from cavityjt.model import diabatic_potential_grids


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(lam=-0.1)
    with pytest.raises(ValueError):
        ModelParams(lam=1.0, omega_q=-1e-9)
    p = ModelParams(lam=1.0, phi=-0.5, theta=7.0)
    assert 0.0 <= p.phi < 2.0 * math.pi
    assert 0.0 <= p.theta < 2.0 * math.pi
    assert math.isclose(p.phi, 2.0 * math.pi - 0.5)


def test_cylindrical_detection():
    assert ModelParams(lam=1.0).is_cylindrical()
    assert ModelParams(lam=1.0, phi=0.3, theta=0.3 + math.pi / 2).is_cylindrical()
    assert ModelParams(lam=1.0, phi=0.0, theta=3.0 * math.pi / 2).is_cylindrical()
    assert not ModelParams(lam=1.0, phi=0.0, theta=0.0).is_cylindrical()
    assert not ModelParams(lam=1.0, phi=0.0, theta=1.2).is_cylindrical()


def test_replace_keeps_other_fields():
    p = ModelParams(lam=2.0, omega_q=0.5, phi=0.1, theta=1.7)
    q = p.replace(lam=3.0)
    assert q.lam == 3.0 and q.omega_q == 0.5 and q.phi == 0.1 and q.theta == 1.7


def test_potential_matrix_hermitian_and_matches_surfaces():
    rng = np.random.default_rng(7)
    p = ModelParams(lam=1.3, omega_q=0.8, phi=0.4, theta=2.1)
    for _ in range(20):
        x, y = rng.uniform(-3, 3, size=2)
        v = diabatic_potential(p, x, y)
        m = v.matrix()
        assert np.allclose(m, m.conj().T)
        lo, hi = v.eigenvalues()
        rho, varphi = math.hypot(x, y), math.atan2(y, x)
        vm, vp = adiabatic_surfaces(p, rho, varphi)
        assert math.isclose(lo, float(vm), abs_tol=1e-12)
        assert math.isclose(hi, float(vp), abs_tol=1e-12)
        assert np.allclose(sorted(np.linalg.eigvalsh(m)), [lo, hi], atol=1e-12)


def test_grid_form_agrees_with_pointwise():
    p = ModelParams(lam=0.7, omega_q=0.3, phi=1.0, theta=2.5)
    xs = np.linspace(-2, 2, 5)
    v11, v22, v12 = diabatic_potential_grids(p, xs[:, None], xs[None, :])
    for i, x in enumerate(xs):
        for j, y in enumerate(xs):
            one = diabatic_potential(p, float(x), float(y))
            assert math.isclose(v11[i, j], one.v11, abs_tol=1e-14)
            assert math.isclose(v22[i, j], one.v22, abs_tol=1e-14)
            assert abs(v12[i, j] - one.v12) < 1e-14


def test_coupling_gain_range_and_quadrature_case():
    rng = np.random.default_rng(11)
    varphi = rng.uniform(0, 2 * math.pi, size=200)
    p = ModelParams(lam=1.0, phi=0.2, theta=1.1)
    g2 = coupling_gain(p, varphi)
    c = abs(math.cos(p.phi - p.theta))
    assert np.all(g2 >= 1.0 - c - 1e-12)
    assert np.all(g2 <= 1.0 + c + 1e-12)
    # in quadrature the gain is identically one
    q = ModelParams(lam=1.0, phi=0.2, theta=0.2 + math.pi / 2)
    assert np.allclose(coupling_gain(q, varphi), 1.0, atol=1e-15)


def test_surfaces_gap_at_origin_and_degenerate_touch():
    p = ModelParams(lam=2.0, omega_q=0.5)
    vm, vp = adiabatic_surfaces(p, 0.0, 0.3)
    assert math.isclose(float(vp - vm), 0.5, abs_tol=1e-14)
    # gapless model: surfaces touch at the origin
    z = ModelParams(lam=2.0, omega_q=0.0)
    vm, vp = adiabatic_surfaces(z, 0.0, 0.3)
    assert float(vp - vm) == 0.0
    with pytest.raises(ValueError):
        adiabatic_surfaces(p, -1.0, 0.0)


def test_geometry_matches_symmetric_closed_form():
    p = ModelParams(lam=6.0, omega_q=0.5)
    geom = surface_geometry(p)
    expected_rho = math.sqrt(4 * 6.0**2 - (0.5 / (4 * 6.0)) ** 2)
    assert abs(geom.rho_min - expected_rho) < 1e-8
    # closed-form depth: -2 lam^2 - omega_q^2/(32 lam^2)
    assert abs(geom.v_min - (-72.00021701388889)) < 1e-8
    assert geom.gap_at_ci == 0.5


def test_geometry_below_critical_has_no_ring():
    om = 0.5
    crit = math.sqrt(om / 8.0)  # quadrature phases: gain G = 1
    p = ModelParams(lam=0.9 * crit, omega_q=om)
    geom = surface_geometry(p)
    assert geom.rho_min == 0.0
    above = surface_geometry(ModelParams(lam=1.1 * crit, omega_q=om))
    assert above.rho_min > 0.0


def test_critical_lambda_values():
    geom = surface_geometry(ModelParams(lam=1.0, omega_q=0.5))
    assert abs(geom.critical_lambda - 0.25) < 1e-8
    # aligned phases double the peak gain: critical coupling drops by sqrt(2)
    aligned = surface_geometry(ModelParams(lam=1.0, omega_q=0.5, phi=0.3, theta=0.3))
    assert abs(aligned.critical_lambda - math.sqrt(0.5 / 16.0)) < 1e-8
    gapless = surface_geometry(ModelParams(lam=1.0, omega_q=0.0))
    assert gapless.critical_lambda == 0.0


def test_correction_terms_values_and_limits():
    p = ModelParams(lam=1.5, omega_q=0.8)
    rho = np.array([0.5, 2.0, 8.0])
    v_cent, v_gauge = correction_terms(p, rho)
    denom = 0.8**2 + 16.0 * 1.5**2 * rho**2
    assert np.allclose(v_cent, 4.0 * 1.5**2 * 0.8**2 / (2.0 * denom**2), atol=1e-15)
    assert np.allclose(v_gauge, (1.0 + 0.8 / np.sqrt(denom)) / (4.0 * rho**2), atol=1e-15)
    # both decay with radius
    assert v_cent[2] < v_cent[0] and v_gauge[2] < v_gauge[0]
    # gapless limit: no centrifugal term, bare 1/(4 rho^2) gauge scalar
    z = ModelParams(lam=1.5, omega_q=0.0)
    v_cent0, v_gauge0 = correction_terms(z, rho)
    assert np.all(v_cent0 == 0.0)
    assert np.allclose(v_gauge0, 1.0 / (4.0 * rho**2), atol=1e-15)
    with pytest.raises(ValueError):
        correction_terms(p, 0.0)
