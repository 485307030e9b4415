"""Truncated number-basis oracle for cross-validating the grid propagator.

Everything here is built directly from ladder operators in the product basis
|n_a, n_b, s> with C-order flat index (n_a*N + n_b)*2 + s, so the Hilbert
space, the Hamiltonian and the time evolution share no code with the
grid-based modules.  Agreement between the two propagations is therefore a
meaningful check rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import ConfigError, TruncationError
from .model import ModelParams
from .propagator import GridSpec, SpinorField

_DENSE_DIM_LIMIT = 2000
_COHERENT_TAIL_LIMIT = 1e-6


@dataclass(frozen=True)
class FockBasis:
    """N photon levels per mode times the two internal states."""

    n_levels: int

    def __post_init__(self):
        if self.n_levels < 2:
            raise ConfigError("need at least 2 levels per mode")

    @property
    def dim(self) -> int:
        return 2 * self.n_levels**2

    def index(self, n_a: int, n_b: int, s: int) -> int:
        n = self.n_levels
        if not (0 <= n_a < n and 0 <= n_b < n and s in (0, 1)):
            raise ValueError(f"state ({n_a}, {n_b}, {s}) outside basis")
        return (n_a * n + n_b) * 2 + s

    def number_diagonals(self):
        """Diagonals of (n_a, n_b, sigma_z) in the flat basis."""
        n = self.n_levels
        levels = np.arange(n, dtype=float)
        ones = np.ones(n)
        sz = np.array([1.0, -1.0])
        n_a = np.kron(np.kron(levels, ones), np.ones(2))
        n_b = np.kron(np.kron(ones, levels), np.ones(2))
        z = np.kron(np.kron(ones, ones), sz)
        return n_a, n_b, z


def _ladder(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, n)), 1)


def hamiltonian(p: ModelParams, basis: FockBasis) -> np.ndarray:
    """Dense Hamiltonian matrix in the flat product basis."""
    n = basis.n_levels
    a = _ladder(n)
    num = a.T @ a
    eye_n = np.eye(n)
    eye2 = np.eye(2)
    sz = np.diag([1.0, -1.0])
    sp = np.array([[0.0, 1.0], [0.0, 0.0]])  # |e><g|

    def mode_coupling(phase):
        flip = sp * np.exp(-1j * phase) + sp.T * np.exp(1j * phase)
        return flip

    quad = a + a.T
    h = (
        np.kron(np.kron(num, eye_n), eye2)
        + np.kron(np.kron(eye_n, num), eye2)
        + np.eye(basis.dim)
        + 0.5 * p.omega_q * np.kron(np.kron(eye_n, eye_n), sz)
    ).astype(complex)
    h += math.sqrt(2.0) * p.lam * np.kron(np.kron(quad, eye_n), mode_coupling(p.phi))
    h += math.sqrt(2.0) * p.lam * np.kron(np.kron(eye_n, quad), mode_coupling(p.theta))
    return h


def coherent_amplitudes(alpha: complex, n_levels: int) -> np.ndarray:
    """Normalized coherent-state column, with a truncation-tail guard."""
    c = np.zeros(n_levels, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for k in range(1, n_levels):
        c[k] = c[k - 1] * alpha / math.sqrt(k)
    tail = float(np.sum(np.abs(c[-2:]) ** 2))
    if tail > _COHERENT_TAIL_LIMIT:
        raise TruncationError(
            f"coherent state |alpha|={abs(alpha):.3f} leaves {tail:.2e} in the "
            f"top two of {n_levels} levels",
            loss=tail,
        )
    return c


def initial_fock_state(p: ModelParams, basis: FockBasis, x0: float, y0: float = 0.0) -> np.ndarray:
    """Coherent modes at quadrature centers (x0, y0) times (1, -1)/sqrt(2)."""
    ca = coherent_amplitudes(x0 / math.sqrt(2.0), basis.n_levels)
    cb = coherent_amplitudes(y0 / math.sqrt(2.0), basis.n_levels)
    spinor = np.array([1.0, -1.0]) / math.sqrt(2.0)
    vec = np.kron(np.kron(ca, cb), spinor)
    return vec / np.linalg.norm(vec)


def evolve(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """exp(-iHt) psi0, dense diagonalization below the size cutoff."""
    dim = h.shape[0]
    if dim <= _DENSE_DIM_LIMIT:
        w, v = scipy.linalg.eigh(h)
        return v @ (np.exp(-1j * w * t) * (v.conj().T @ psi0))
    sparse_h = scipy.sparse.csr_matrix(h)
    return scipy.sparse.linalg.expm_multiply(-1j * t * sparse_h, psi0)


def ground_state_energy(p: ModelParams, basis: FockBasis) -> float:
    return float(scipy.linalg.eigvalsh(hamiltonian(p, basis))[0])


def hermite_table(n_levels: int, axis: np.ndarray) -> np.ndarray:
    """Orthonormal oscillator eigenfunctions h_n(x), rows indexed by n."""
    table = np.empty((n_levels, axis.size))
    table[0] = math.pi**-0.25 * np.exp(-0.5 * axis**2)
    if n_levels > 1:
        table[1] = math.sqrt(2.0) * axis * table[0]
    for k in range(2, n_levels):
        table[k] = (
            math.sqrt(2.0 / k) * axis * table[k - 1]
            - math.sqrt((k - 1.0) / k) * table[k - 2]
        )
    return table


def fock_to_grid(vec: np.ndarray, basis: FockBasis, grid: GridSpec) -> SpinorField:
    """Synthesize the two-component grid wave function from Fock amplitudes."""
    n = basis.n_levels
    c = vec.reshape(n, n, 2)
    h = hermite_table(n, grid.axis)
    psi = np.einsum("abs,ax,by->sxy", c, h, h)
    return SpinorField(grid, psi[0], psi[1], 0.0)


def grid_to_fock(field: SpinorField, basis: FockBasis) -> np.ndarray:
    """Project a grid field onto the truncated basis (no renormalization)."""
    n = basis.n_levels
    h = hermite_table(n, field.grid.axis)
    psi = np.stack(field.components())
    c = np.einsum("ax,by,sxy->abs", h, h, psi) * field.grid.dx**2
    return c.reshape(basis.dim)


def fock_fidelity(u: np.ndarray, v: np.ndarray) -> float:
    return abs(complex(np.vdot(u, v)))
