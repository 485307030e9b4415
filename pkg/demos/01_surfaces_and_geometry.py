"""Tour of the coupled potential surfaces and their sombrero geometry.

Two field quadratures displace the emitter along x and y, so the adiabatic
picture is a pair of 2D surfaces: a lower sombrero sheet and an upper cone.
This script prints the numbers that pin that picture down.
"""

import math

import numpy as np

from cavityjt import ModelParams, adiabatic_surfaces, correction_terms, surface_geometry

# 1. with no detuning the sheets touch: a true conical intersection
p0 = ModelParams(lam=1.0, omega_q=0.0)
vm, vp = adiabatic_surfaces(p0, rho=np.array([0.0]), varphi=np.array([0.0]))
print(f"gapless case: V+ - V- at origin = {float(vp[0] - vm[0]):.3e}")

# 2. detuning opens a gap equal to omega_q at the origin
p = ModelParams(lam=1.0, omega_q=0.5)
vm, vp = adiabatic_surfaces(p, rho=np.array([0.0]), varphi=np.array([0.0]))
print(f"detuned case:  V+ - V- at origin = {float(vp[0] - vm[0]):.6f} (omega_q = {p.omega_q})")

# 3. the lower sheet minimum sits on a ring; numerics vs closed form
for lam in (1.0, 2.0, 3.0, 6.0):
    p = ModelParams(lam=lam, omega_q=0.5)
    geo = surface_geometry(p)
    closed = math.sqrt(4.0 * lam**2 - (p.omega_q / (4.0 * lam)) ** 2)
    print(
        f"lam={lam}: ring radius {geo.rho_min:.9f} (closed form {closed:.9f}), "
        f"well depth {geo.v_min:.6f}, gap above ring {geo.gap_at_ci:.3f}"
    )

# 4. below a critical coupling the ring collapses into a single bowl
p = ModelParams(lam=1.0, omega_q=0.5)
print(f"critical coupling for omega_q=0.5: {surface_geometry(p).critical_lambda:.6f}")

# 5. how trustworthy is a single-surface picture out on the ring?  The
#    centrifugal-like and gauge-scalar corrections both fall off fast.
p = ModelParams(lam=3.0, omega_q=0.5)
radius = surface_geometry(p).rho_min
for rho in (radius / 4.0, radius / 2.0, radius):
    v_cent, v_gauge = correction_terms(p, rho)
    print(f"rho={rho:6.3f}: v_cent {float(v_cent):.3e}  v_gauge {float(v_gauge):.3e}")
