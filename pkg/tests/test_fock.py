"""Number-basis oracle: construction, spectra, and grid cross-validation."""

import math

import numpy as np
import pytest
import scipy.linalg
import scipy.special

from cavityjt import (
    ConfigError,
    FockBasis,
    GridSpec,
    Mode,
    ModelParams,
    PropagationConfig,
    TruncationError,
    coherent_amplitudes,
    evolve,
    fock_fidelity,
    fock_to_grid,
    grid_to_fock,
    ground_state_energy,
    hamiltonian,
    initial_fock_state,
    initial_state,
    propagate,
)
from cavityjt.fock import hermite_table


def test_basis_indexing():
    basis = FockBasis(4)
    assert basis.dim == 32
    seen = set()
    for na in range(4):
        for nb in range(4):
            for s in (0, 1):
                seen.add(basis.index(na, nb, s))
    assert seen == set(range(32))
    with pytest.raises(ValueError):
        basis.index(4, 0, 0)
    with pytest.raises(ValueError):
        basis.index(0, 0, 2)
    with pytest.raises(ConfigError):
        FockBasis(1)


def test_hamiltonian_hermitian_and_diagonal_limit():
    p = ModelParams(lam=0.4, omega_q=0.7, phi=0.9, theta=2.3)
    basis = FockBasis(5)
    h = hamiltonian(p, basis)
    assert np.allclose(h, h.conj().T)
    # no coupling: diagonal with n_a + n_b + 1 + omega_q sz / 2
    h0 = hamiltonian(ModelParams(lam=0.0, omega_q=0.7), basis)
    n_a, n_b, sz = basis.number_diagonals()
    assert np.allclose(h0, np.diag(n_a + n_b + 1.0 + 0.35 * sz))


def test_spectrum_invariant_under_common_phase_shift():
    basis = FockBasis(6)
    p = ModelParams(lam=0.6, omega_q=0.5, phi=0.3, theta=1.1)
    q = ModelParams(lam=0.6, omega_q=0.5, phi=1.0, theta=1.8)
    wp = scipy.linalg.eigvalsh(hamiltonian(p, basis))
    wq = scipy.linalg.eigvalsh(hamiltonian(q, basis))
    assert float(np.max(np.abs(wp - wq))) < 1e-10


def test_ground_energy_weak_coupling_expansion():
    # second-order shift of the dressed vacuum: E0 = 1 - omega_q/2
    # - 4 lam^2 / (1 + omega_q) + O(lam^4)
    lam, om = 0.05, 0.5
    e0 = ground_state_energy(ModelParams(lam=lam, omega_q=om), FockBasis(24))
    assert abs(e0 - (1.0 - om / 2.0 - 4.0 * lam * lam / (1.0 + om))) < 5e-5


def test_coherent_amplitudes_poisson():
    alpha = 1.3
    c = coherent_amplitudes(alpha, 24)
    n = np.arange(24)
    expected = np.exp(-alpha * alpha) * alpha ** (2 * n) / scipy.special.factorial(n)
    assert float(np.max(np.abs(np.abs(c) ** 2 - expected))) < 1e-14
    with pytest.raises(TruncationError) as info:
        coherent_amplitudes(4.0, 12)
    assert info.value.loss > 1e-6


def test_initial_fock_state_moments():
    basis = FockBasis(24)
    p = ModelParams(lam=0.5, omega_q=0.5)
    vec = initial_fock_state(p, basis, x0=1.5, y0=-0.5)
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-12
    n_a, n_b, sz = basis.number_diagonals()
    w = np.abs(vec) ** 2
    assert abs(float(w @ n_a) - 1.5**2 / 2.0) < 1e-9
    assert abs(float(w @ n_b) - 0.5**2 / 2.0) < 1e-9
    assert abs(float(w @ sz)) < 1e-12


def test_evolve_unitary_and_stationary_ground_state():
    basis = FockBasis(10)
    p = ModelParams(lam=0.3, omega_q=0.6)
    h = hamiltonian(p, basis)
    w, v = scipy.linalg.eigh(h)
    ground = v[:, 0]
    out = evolve(h, ground, 2.0)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12
    assert abs(fock_fidelity(ground, out) - 1.0) < 1e-12


def test_hermite_table_orthonormal():
    # the axis must clear the highest classical turning point sqrt(2n+1)
    grid = GridSpec(n=128, half_width=12.0)
    h = hermite_table(32, grid.axis)
    gram = h @ h.T * grid.dx
    assert float(np.max(np.abs(gram - np.eye(32)))) < 1e-12
    # the oracle cross-check grid (24 levels on half-width 9) is still clean
    grid = GridSpec(n=128, half_width=9.0)
    h = hermite_table(24, grid.axis)
    gram = h @ h.T * grid.dx
    assert float(np.max(np.abs(gram - np.eye(24)))) < 1e-8


def test_grid_fock_round_trip():
    basis = FockBasis(16)
    grid = GridSpec(n=128, half_width=9.0)
    rng = np.random.default_rng(13)
    vec = rng.normal(size=basis.dim) + 1j * rng.normal(size=basis.dim)
    # keep weight away from the truncation edge so synthesis is faithful
    n_a, n_b, _ = basis.number_diagonals()
    vec *= np.exp(-0.5 * (n_a + n_b))
    vec /= np.linalg.norm(vec)
    field = fock_to_grid(vec, basis, grid)
    back = grid_to_fock(field, basis)
    assert float(np.max(np.abs(back - vec))) < 1e-10


def test_grid_propagation_matches_oracle():
    # the documented cross-check instance: lam=0.5, omega_q=0.5, x0=1, t=5
    p = ModelParams(lam=0.5, omega_q=0.5)
    basis = FockBasis(24)
    grid = GridSpec(n=128, half_width=9.0)
    psi0 = initial_fock_state(p, basis, x0=1.0)
    reference = evolve(hamiltonian(p, basis), psi0, 5.0)
    s = initial_state(p, grid, x0=1.0)
    traj = propagate(s, p, PropagationConfig(dt=0.01, t_final=5.0, mode=Mode.FULL, order=2))
    projected = grid_to_fock(traj.final_state, basis)
    assert fock_fidelity(projected, reference) >= 0.999
