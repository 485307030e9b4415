"""Shared fixtures: the handful of propagation runs that several tests read.

The two lam=2 runs cover a full revival cycle and take a few minutes each;
they are session-scoped so the whole suite pays for them once.
"""

import math

import pytest

from cavityjt import (
    GridSpec,
    Mode,
    ModelParams,
    PropagationConfig,
    initial_scalar_state,
    initial_state,
    propagate,
)


@pytest.fixture(scope="session")
def lam2_params():
    return ModelParams(lam=2.0, omega_q=0.5)


@pytest.fixture(scope="session")
def lam2_full(lam2_params):
    """Full-model revival run: lam=2, x0=4, one cycle past t_rev ~ 100.2."""
    grid = GridSpec(n=256, half_width=16.0)
    state = initial_state(lam2_params, grid, x0=4.0)
    cfg = PropagationConfig(dt=0.01, t_final=225.0, mode=Mode.FULL, order=4)
    return propagate(state, lam2_params, cfg)


@pytest.fixture(scope="session")
def lam2_semi(lam2_params):
    grid = GridSpec(n=256, half_width=16.0)
    state = initial_scalar_state(lam2_params, grid, x0=4.0)
    cfg = PropagationConfig(dt=0.01, t_final=225.0, mode=Mode.SEMI_ADIABATIC, order=2)
    return propagate(state, lam2_params, cfg)


@pytest.fixture(scope="session")
def lam3_params():
    return ModelParams(lam=3.0, omega_q=0.5)


@pytest.fixture(scope="session")
def lam3_full(lam3_params):
    """Interference run: lam=3, x0=6, snapshots every quarter of T_in."""
    grid = GridSpec(n=512, half_width=22.0)
    state = initial_state(lam3_params, grid, x0=6.0)
    cfg = PropagationConfig(
        dt=0.01, t_final=18.84, snapshot_stride=471, mode=Mode.FULL, order=2
    )
    return propagate(state, lam3_params, cfg)


@pytest.fixture(scope="session")
def lam3_semi(lam3_params):
    grid = GridSpec(n=512, half_width=22.0)
    state = initial_scalar_state(lam3_params, grid, x0=6.0)
    cfg = PropagationConfig(
        dt=0.01, t_final=18.84, snapshot_stride=471, mode=Mode.SEMI_ADIABATIC, order=2
    )
    return propagate(state, lam3_params, cfg)


@pytest.fixture(scope="session")
def free_run():
    """Uncoupled oscillators: lam=0, omega_q=0, x0=2, just past two periods."""
    p = ModelParams(lam=0.0, omega_q=0.0)
    grid = GridSpec(n=64, half_width=8.0)
    state = initial_state(p, grid, x0=2.0)
    dt = math.pi / 320.0
    cfg = PropagationConfig(dt=dt, t_final=1380 * dt, mode=Mode.FULL, order=6)
    return propagate(state, p, cfg)
