"""Static definitions of the two-mode cavity model in the quadrature picture.

A two-level emitter is coupled to two degenerate cavity modes whose
quadratures (x, y) act as effective nuclear coordinates.  In dimensionless
units (hbar = m = omega = 1) the Hamiltonian is

    H = (p_x^2 + p_y^2)/2 + (x^2 + y^2)/2 + (omega_q/2) sigma_z
        + 2 lam x (cos(phi) sigma_x + sin(phi) sigma_y)
        + 2 lam y (cos(theta) sigma_x + sin(theta) sigma_y),

so the diabatic potential is a 2x2 matrix field over (x, y) with
off-diagonal element v12 = 2 lam (x e^{-i phi} + y e^{-i theta}).  The two
adiabatic surfaces meet in a conical intersection at the origin with gap
omega_q; for strong enough coupling the lower surface develops a sombrero
ring of minima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless couplings and mode phases.

    lam      : light-matter coupling strength, >= 0
    omega_q  : emitter transition frequency (gap at the intersection), >= 0
    phi      : phase of mode a, stored reduced to [0, 2*pi)
    theta    : phase of mode b, stored reduced to [0, 2*pi)
    """

    lam: float
    omega_q: float = 0.0
    phi: float = 0.0
    theta: float = math.pi / 2

    def __post_init__(self):
        if not (self.lam >= 0.0):
            raise ValueError(f"coupling lam must be >= 0, got {self.lam}")
        if not (self.omega_q >= 0.0):
            raise ValueError(f"omega_q must be >= 0, got {self.omega_q}")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def phase_diff_cos(self) -> float:
        return math.cos(self.phi - self.theta)

    @property
    def phase_diff_sin(self) -> float:
        return math.sin(self.theta - self.phi)

    def is_cylindrical(self, tol: float = 1e-12) -> bool:
        """True when |phi - theta| is an odd multiple of pi/2.

        Only then is the coupling magnitude, and with it both adiabatic
        surfaces, independent of the polar angle.
        """
        d = (self.phi - self.theta) % math.pi
        return abs(d - math.pi / 2) <= tol

    def replace(self, **kwargs) -> "ModelParams":
        data = {
            "lam": self.lam,
            "omega_q": self.omega_q,
            "phi": self.phi,
            "theta": self.theta,
        }
        data.update(kwargs)
        return ModelParams(**data)


@dataclass(frozen=True)
class PotentialMatrix:
    """Pointwise 2x2 diabatic potential, Hermitian by construction."""

    v11: float
    v22: float
    v12: complex

    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.v11, self.v12], [np.conj(self.v12), self.v22]],
            dtype=complex,
        )

    def eigenvalues(self) -> tuple[float, float]:
        """(lower, upper) eigenvalues in closed form."""
        mean = 0.5 * (self.v11 + self.v22)
        half_gap = math.hypot(0.5 * (self.v11 - self.v22), abs(self.v12))
        return mean - half_gap, mean + half_gap


def coupling_gain(p: ModelParams, varphi):
    """Angular gain g^2(varphi) = 1 + cos(phi - theta) sin(2 varphi).

    |v12|^2 = 4 lam^2 rho^2 g^2, so g^2 controls how the coupling strength
    varies around a circle.  g^2 is identically 1 iff the phases are in
    quadrature (cylindrical case); it touches zero along two directions when
    theta - phi is a multiple of pi (intersecting-curve case).
    """
    return 1.0 + p.phase_diff_cos * np.sin(2.0 * np.asarray(varphi, dtype=float))


def diabatic_potential(p: ModelParams, x: float, y: float) -> PotentialMatrix:
    """Evaluate the 2x2 diabatic potential at one point."""
    d = 0.5 * (x * x + y * y)
    v12 = 2.0 * p.lam * (x * np.exp(-1j * p.phi) + y * np.exp(-1j * p.theta))
    return PotentialMatrix(d + 0.5 * p.omega_q, d - 0.5 * p.omega_q, complex(v12))


def diabatic_potential_grids(p: ModelParams, x, y):
    """Vectorized (v11, v22, v12) over broadcastable coordinate arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = 0.5 * (x * x + y * y)
    v12 = 2.0 * p.lam * (x * np.exp(-1j * p.phi) + y * np.exp(-1j * p.theta))
    return d + 0.5 * p.omega_q, d - 0.5 * p.omega_q, v12


def adiabatic_surfaces(p: ModelParams, rho, varphi):
    """Lower and upper adiabatic surfaces in polar coordinates.

    V_pm = rho^2/2 +- sqrt(omega_q^2/4 + 4 lam^2 rho^2 g^2(varphi)).

    Accepts scalars or broadcastable arrays; rho must be >= 0.
    Returns (v_minus, v_plus).
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho < 0):
        raise ValueError("rho must be >= 0")
    root = np.sqrt(
        0.25 * p.omega_q**2 + 4.0 * p.lam**2 * rho**2 * coupling_gain(p, varphi)
    )
    half_trace = 0.5 * rho**2
    return half_trace - root, half_trace + root


@dataclass(frozen=True)
class SurfaceGeometry:
    """Derived geometry of the lower adiabatic surface."""

    rho_min: float
    v_min: float
    gap_at_ci: float
    critical_lambda: float


def _radial_minimum(lam: float, omega_q: float, gain: float, tol: float = 1e-12):
    """Radius of the lower-surface minimum along a direction of gain g^2.

    Solves d/drho [rho^2/2 - sqrt(omega_q^2/4 + 4 lam^2 g^2 rho^2)] = 0 by
    bisection on the monotone bracket factor; returns 0.0 when the surface
    has no interior minimum (coupling below critical).
    """
    a = 4.0 * lam * lam * gain
    if a == 0.0:
        return 0.0
    if omega_q == 0.0:
        # root of 1 - sqrt(a)/rho: closed in this limit
        return math.sqrt(a)

    def slope_factor(rho):
        return 1.0 - a / math.sqrt(0.25 * omega_q**2 + a * rho * rho)

    if slope_factor(0.0) >= 0.0:
        return 0.0
    hi = 2.0 * math.sqrt(a) + omega_q + 1.0
    lo = 0.0
    while slope_factor(hi) <= 0.0:
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if slope_factor(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def surface_geometry(p: ModelParams) -> SurfaceGeometry:
    """Locate the sombrero minimum of the lower surface numerically.

    The surface is minimized along the two candidate angular directions
    varphi = pi/4 and 3*pi/4 (extrema of the angular gain); the numerical
    1D minimization is the ground truth, cross-checked by tests against the
    symmetric-case closed form sqrt(4 lam^2 - (omega_q / 4 lam)^2).
    """
    best_rho, best_v = 0.0, math.inf
    for varphi in (0.25 * math.pi, 0.75 * math.pi):
        gain = float(coupling_gain(p, varphi))
        rho = _radial_minimum(p.lam, p.omega_q, gain)
        v = float(adiabatic_surfaces(p, rho, varphi)[0])
        if v < best_v:
            best_rho, best_v = rho, v

    # certificate: the reported minimum must not beat nearby probes
    if best_rho > 0.0:
        for varphi in (0.25 * math.pi, 0.75 * math.pi):
            for probe in (best_rho - 1e-4, best_rho + 1e-4):
                if probe >= 0.0:
                    v = float(adiabatic_surfaces(p, probe, varphi)[0])
                    if v < best_v - 1e-12:
                        raise ArithmeticError(
                            "radial minimization certificate failed: "
                            f"V({probe:.6f}) = {v:.12e} < {best_v:.12e}"
                        )

    return SurfaceGeometry(
        rho_min=best_rho,
        v_min=best_v,
        gap_at_ci=p.omega_q,
        critical_lambda=_critical_lambda(p),
    )


def _critical_lambda(p: ModelParams, tol: float = 1e-10) -> float:
    """Smallest coupling for which the lower surface has rho_min > 0.

    Found by bisection on the numerically minimized radius, not by trusting
    any printed inequality.
    """
    if p.omega_q == 0.0:
        return 0.0
    gain = 1.0 + abs(p.phase_diff_cos)

    def has_ring(lam):
        return _radial_minimum(lam, p.omega_q, gain, tol=1e-13) > 0.0

    lo, hi = 0.0, max(1.0, math.sqrt(p.omega_q))
    while not has_ring(hi):
        hi *= 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_ring(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def correction_terms(p: ModelParams, rho):
    """Diagnostic corrections to the lowest-surface picture at radius rho.

    Returns (v_cent, v_gauge_scalar) with the effective coupling 2*lam of
    the quadrature Hamiltonian inserted:

        v_cent         = (2 lam)^2 omega_q^2 / (2 (omega_q^2 + 16 lam^2 rho^2)^2)
        v_gauge_scalar = (1/(4 rho^2)) (1 + omega_q / sqrt(omega_q^2 + 16 lam^2 rho^2))

    These are never added to the propagated Hamiltonian; they quantify where
    the scalar lower-surface approximation is trustworthy.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0):
        raise ValueError("correction terms are singular at rho = 0")
    denom = p.omega_q**2 + 16.0 * p.lam**2 * rho**2
    if p.omega_q > 0.0:
        v_cent = 4.0 * p.lam**2 * p.omega_q**2 / (2.0 * denom**2)
        ratio = p.omega_q / np.sqrt(denom)
    else:
        v_cent = np.zeros_like(rho)
        ratio = np.zeros_like(rho)
    v_gauge_scalar = (1.0 + ratio) / (4.0 * rho**2)
    return v_cent, v_gauge_scalar
