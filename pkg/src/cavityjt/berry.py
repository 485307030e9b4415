"""Geometric phase of the adiabatic states around the conical intersection.

The lower/upper adiabatic states on a circle of radius R are parametrized by
two angles (nu, mu):

    tan(2 nu) = (4 lam rho / omega_q) sqrt(1 + sin(2 varphi) cos(phi - theta))
    mu        = atan2(cos(varphi) sin(phi) + sin(varphi) sin(theta),
                      cos(varphi) cos(phi) + sin(varphi) cos(theta))

and the geometric phase accumulated on one counterclockwise loop is the line
integral

    gamma(R) = -closed_integral cos^2(nu) d mu,

evaluated here as a trapezoidal Stieltjes sum with mu tracked on a continuous
branch.  The winding of mu around the loop, +-2*pi away from the degenerate
phase configurations, is the whole content of the integral; results are
reported reduced to the interval (-2*pi, 0].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import QuadratureError
from .model import ModelParams, coupling_gain, surface_geometry

_DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class AdiabaticAngles:
    """Mixing angle nu and phase angle mu of the adiabatic basis."""

    nu: float
    mu: float


def adiabatic_angles(p: ModelParams, rho, varphi, prev_mu=None):
    """Angles (nu, mu) at polar point(s) (rho, varphi).

    nu lies in [0, pi/2]; in the gapless limit omega_q = 0 the indeterminate
    directions are assigned the limiting value nu = pi/4.  When prev_mu is
    given, mu is returned on the branch nearest to it (shifted by a multiple
    of 2*pi), which is how loop sampling keeps the phase continuous.
    """
    rho = np.asarray(rho, dtype=float)
    varphi = np.asarray(varphi, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("adiabatic angles need rho > 0")
    gain = np.sqrt(np.maximum(coupling_gain(p, varphi), 0.0))
    amplitude = 4.0 * p.lam * rho * gain
    nu = 0.5 * np.arctan2(amplitude, p.omega_q)
    if p.omega_q == 0.0:
        nu = np.where(amplitude == 0.0, 0.25 * math.pi, nu)

    num = np.cos(varphi) * math.sin(p.phi) + np.sin(varphi) * math.sin(p.theta)
    den = np.cos(varphi) * math.cos(p.phi) + np.sin(varphi) * math.cos(p.theta)
    mu = np.arctan2(num, den)
    if prev_mu is not None:
        mu = mu + TWO_PI * np.round((np.asarray(prev_mu) - mu) / TWO_PI)
    if nu.ndim == 0:
        return AdiabaticAngles(float(nu), float(mu))
    return nu, mu


TWO_PI = 2.0 * math.pi


def _reduce_phase(gamma: float) -> float:
    """Map a raw accumulated phase into (-2*pi, 0]."""
    g = math.fmod(gamma, TWO_PI)
    if g > 0.0:
        g -= TWO_PI
    if g <= -TWO_PI:
        g += TWO_PI
    return 0.0 if g == 0.0 else g


def _loop_estimate(p: ModelParams, radius: float, n_samples: int, start_varphi: float,
                   mu_offset: float):
    """One trapezoidal Stieltjes pass; None if branch tracking needs refining."""
    varphi = start_varphi + TWO_PI * np.arange(n_samples + 1) / n_samples
    gain = np.sqrt(np.maximum(coupling_gain(p, varphi), 0.0))
    amplitude = 4.0 * p.lam * radius * gain
    nu = 0.5 * np.arctan2(amplitude, p.omega_q)
    if p.omega_q == 0.0:
        nu = np.where(amplitude == 0.0, 0.25 * math.pi, nu)
    weight = np.cos(nu) ** 2

    num = np.cos(varphi) * math.sin(p.phi) + np.sin(varphi) * math.sin(p.theta)
    den = np.cos(varphi) * math.cos(p.phi) + np.sin(varphi) * math.cos(p.theta)
    # mu_offset moves the whole branch (a single-valued gauge change); only
    # increments enter the sum, so the result must not depend on it
    mu = np.arctan2(num, den) + mu_offset
    dmu = np.mod(np.diff(mu) + math.pi, TWO_PI) - math.pi
    if np.max(np.abs(dmu)) >= 0.5 * math.pi:
        return None
    return -float(np.sum(0.5 * (weight[:-1] + weight[1:]) * dmu))


def berry_phase_numeric(
    p: ModelParams,
    radius: float,
    n_samples: int = 512,
    tol: float = 1e-8,
    max_samples: int = 1 << 23,
    start_varphi: float = 0.0,
    mu_offset: float = 0.0,
) -> float:
    """Loop integral of the adiabatic connection at fixed radius.

    Samples are doubled until consecutive estimates agree to tol and every
    branch step of mu stays below pi/2.  Exactly degenerate phase
    configurations (theta - phi a multiple of pi), where mu is piecewise
    constant with pi jumps through the gap-closing directions, are integrated
    by jump extraction: each jump contributes cos^2(nu) at the jump point,
    which is 1 for omega_q > 0 and 1/2 in the gapless limit.
    """
    if not (radius > 0.0):
        raise ValueError("loop radius must be > 0")
    if n_samples < 8:
        raise ValueError("n_samples must be at least 8")

    if abs(p.phase_diff_sin) <= _DEGENERATE_TOL:
        jump_weight = 1.0 if p.omega_q > 0.0 else 0.5
        return _reduce_phase(-2.0 * math.pi * jump_weight)

    previous = None
    estimate = None
    n = int(n_samples)
    while n <= max_samples:
        estimate = _loop_estimate(p, radius, n, start_varphi, mu_offset)
        if estimate is not None:
            if previous is not None and abs(estimate - previous) < tol:
                return _reduce_phase(estimate)
            previous = estimate
        n *= 2
    raise QuadratureError(
        f"loop quadrature did not converge below {tol:g} within {max_samples} samples",
        estimates=(previous, estimate),
    )


def berry_phase_closed_form(p: ModelParams, radius: float) -> float:
    """Closed-form loop phase, valid only in the cylindrical case.

    For |phi - theta| an odd multiple of pi/2 the connection is constant on
    the loop and

        gamma(R) = -pi (1 + omega_q / sqrt(omega_q^2 + 16 lam^2 R^2))

    for a positively oriented winding of mu; the mirrored phase ordering
    reverses the sign before reduction into (-2*pi, 0].
    """
    if not p.is_cylindrical():
        raise ValueError("closed form requires |phi - theta| = pi/2 (mod pi)")
    magnitude = math.pi * (
        1.0 + p.omega_q / math.sqrt(p.omega_q**2 + 16.0 * p.lam**2 * radius**2)
    )
    raw = -magnitude if p.phase_diff_sin > 0 else magnitude
    return _reduce_phase(raw)


@dataclass(frozen=True)
class PhaseMap:
    """Loop phase sampled over coupling strength and mode-b phase."""

    lambda_axis: np.ndarray
    theta_axis: np.ndarray
    gamma: np.ndarray  # shape (len(lambda_axis), len(theta_axis))
    phi: float
    omega_q: float
    radii: np.ndarray = field(repr=False, default=None)

    def rows(self):
        for i, lam in enumerate(self.lambda_axis):
            for j, theta in enumerate(self.theta_axis):
                yield lam, theta, self.gamma[i, j]


def phase_map(
    base: ModelParams,
    lambda_axis,
    theta_axis,
    tol: float = 1e-8,
) -> PhaseMap:
    """Sweep the loop phase over (lam, theta) at fixed phi and omega_q.

    The loop radius for each coupling is the sombrero radius of the
    cylindrically symmetric configuration (theta = phi + pi/2), certified by
    the numerical radial minimization.  The coupling axis must stay above the
    critical coupling so that radius is strictly positive.
    """
    lambda_axis = np.asarray(lambda_axis, dtype=float)
    theta_axis = np.asarray(theta_axis, dtype=float)
    if lambda_axis.ndim != 1 or theta_axis.ndim != 1:
        raise ValueError("axes must be one-dimensional")
    if np.any(lambda_axis <= 0):
        raise ValueError("coupling axis must be bounded away from 0")

    gamma = np.empty((lambda_axis.size, theta_axis.size))
    radii = np.empty(lambda_axis.size)
    for i, lam in enumerate(lambda_axis):
        symmetric = ModelParams(
            lam=float(lam), omega_q=base.omega_q, phi=base.phi,
            theta=base.phi + 0.5 * math.pi,
        )
        radius = surface_geometry(symmetric).rho_min
        if radius <= 0.0:
            raise ValueError(
                f"no sombrero ring at lam = {lam:g} (critical coupling not exceeded)"
            )
        radii[i] = radius
        for j, theta in enumerate(theta_axis):
            gamma[i, j] = berry_phase_numeric(
                base.replace(lam=float(lam), theta=float(theta)),
                radius,
                tol=tol,
            )
    return PhaseMap(
        lambda_axis=lambda_axis,
        theta_axis=theta_axis,
        gamma=gamma,
        phi=base.phi,
        omega_q=base.omega_q,
        radii=radii,
    )
