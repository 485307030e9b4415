"""Cavity-mode observables reduced from the wave-packet state.

The two quadrature axes of the grid map one-to-one onto the two field
modes, so tracing out one axis (and the internal state) leaves a one-mode
density kernel K(x, x') from which photon statistics and the Husimi Q
function follow by quadrature against oscillator and coherent states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .errors import TruncationError, ValidationFailure
from .fock import hermite_table

_TRACE_TOL = 1e-6
_PHOTON_LOSS_TARGET = 1e-6
_PHOTON_LEVEL_CAP = 512
_MEAN_CROSSCHECK_TOL = 1e-6
_Q_BOUND_SLACK = 1e-10


@dataclass(frozen=True)
class ModeKernel:
    """Single-mode reduced density kernel K[x, x'] on the grid axis."""

    axis: np.ndarray
    kernel: np.ndarray
    mode: str

    @property
    def dx(self) -> float:
        return float(self.axis[1] - self.axis[0])

    def trace(self) -> float:
        return float(np.trace(self.kernel).real) * self.dx

    def purity(self) -> float:
        return float(np.sum(np.abs(self.kernel) ** 2)) * self.dx**2

    def coarse(self, stride: int = 2) -> "ModeKernel":
        """Stride-subsampled kernel for cheap sweeps (Q-function scans).

        Quadratures pick up the widened spacing through the axis, so traces
        and moments stay Riemann-consistent without rescaling the kernel.
        """
        return ModeKernel(self.axis[::stride], self.kernel[::stride, ::stride], self.mode)

    def moment_x2(self) -> float:
        return float(np.sum(self.axis**2 * np.diag(self.kernel).real)) * self.dx

    def moment_p2(self) -> float:
        # momentum diagonal via double Fourier transform of the kernel
        t = sfft.ifft(sfft.fft(self.kernel, axis=0), axis=1)
        k = 2.0 * math.pi * sfft.fftfreq(self.axis.size, d=self.dx)
        return float(np.sum(k**2 * np.diag(t).real)) * self.dx

    def mean_photons(self) -> float:
        return 0.5 * (self.moment_x2() + self.moment_p2() - self.trace())


def reduce_mode(field, mode: str) -> ModeKernel:
    """Trace out the other axis and the internal state.

    `mode` is "a" (the x quadrature survives) or "b" (y survives).
    """
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    dx = field.grid.dx
    n = field.grid.n
    kern = np.zeros((n, n), dtype=complex)
    for c in field.components():
        m = c if mode == "a" else c.T
        kern += m @ m.conj().T
    kern *= dx
    out = ModeKernel(field.grid.axis, kern, mode)
    if abs(out.trace() - 1.0) > _TRACE_TOL:
        raise ValidationFailure(
            f"reduced kernel trace {out.trace():.8f} is off unity; "
            "state not normalized or grid is leaking"
        )
    return out


@dataclass(frozen=True)
class PhotonStatistics:
    probabilities: np.ndarray
    leakage: float
    mean: float
    mean_quadrature: float

    @property
    def n_levels(self) -> int:
        return self.probabilities.size

    def parity_split(self):
        even = float(np.sum(self.probabilities[0::2]))
        odd = float(np.sum(self.probabilities[1::2]))
        return even, odd


def photon_statistics(kernel: ModeKernel, n_max: int | None = None) -> PhotonStatistics:
    """Diagonal number-basis populations p_n = <h_n| K |h_n>.

    With n_max omitted, the level count doubles until the captured weight is
    within 1e-6 of the kernel trace (TruncationError at the cap).
    """
    dx = kernel.dx
    trace = kernel.trace()
    levels = n_max if n_max is not None else 32
    while True:
        h = hermite_table(levels, kernel.axis)
        p = np.einsum("nx,xy,ny->n", h, kernel.kernel, h).real * dx**2
        leakage = trace - float(np.sum(p))
        if n_max is not None or leakage < _PHOTON_LOSS_TARGET:
            break
        if levels >= _PHOTON_LEVEL_CAP:
            raise TruncationError(
                f"photon statistics still leak {leakage:.2e} at "
                f"{levels} levels",
                loss=leakage,
            )
        levels *= 2
    mean = float(np.sum(np.arange(levels) * p))
    mean_quad = kernel.mean_photons()
    # cross-check the two mean estimates only when the ladder captured the
    # state; a deliberately truncated request reports its leakage instead.
    # Weight that leaks sits just above the ladder, so the ladder mean can
    # legitimately lag the quadrature mean by roughly levels * leakage.
    slack = _MEAN_CROSSCHECK_TOL * max(1.0, abs(mean_quad)) + 4.0 * levels * abs(leakage)
    if abs(leakage) < _PHOTON_LOSS_TARGET and abs(mean - mean_quad) > slack:
        raise ValidationFailure(
            f"mean photon number disagrees between bases: sum n p_n = {mean:.8f} "
            f"vs quadrature moments {mean_quad:.8f}"
        )
    return PhotonStatistics(p, float(leakage), mean, mean_quad)


@dataclass(frozen=True)
class HusimiMap:
    re_axis: np.ndarray
    im_axis: np.ndarray
    values: np.ndarray  # indexed [re, im]
    mode: str

    def rows(self):
        for i, re in enumerate(self.re_axis):
            for j, im in enumerate(self.im_axis):
                yield re, im, self.values[i, j]

    def integral(self) -> float:
        d_re = float(self.re_axis[1] - self.re_axis[0])
        d_im = float(self.im_axis[1] - self.im_axis[0])
        return float(np.sum(self.values)) * d_re * d_im


def husimi_q(
    kernel: ModeKernel,
    re_axis: np.ndarray,
    im_axis: np.ndarray,
    check_coverage: bool = True,
) -> HusimiMap:
    """Q(alpha) = <alpha| K |alpha> / pi over a rectangular alpha grid.

    The coverage check requires the grid to reach sqrt(2 <n>) + 4 from the
    origin so that displaced and split states stay inside the window.
    """
    re_axis = np.asarray(re_axis, dtype=float)
    im_axis = np.asarray(im_axis, dtype=float)
    if check_coverage:
        need = math.sqrt(2.0 * max(kernel.mean_photons(), 0.0)) + 4.0
        have = min(np.max(np.abs(re_axis)), np.max(np.abs(im_axis)))
        if have < need:
            raise ValidationFailure(
                f"alpha grid reaches {have:.2f} but the state needs {need:.2f}; "
                "widen the axes or disable check_coverage"
            )
    x = kernel.axis
    alpha = (re_axis[:, None] + 1j * im_axis[None, :]).ravel()
    # coherent-state columns <x|alpha>, one per alpha sample
    packets = np.exp(
        -0.5 * (x[:, None] - math.sqrt(2.0) * alpha.real[None, :]) ** 2
        + 1j * math.sqrt(2.0) * alpha.imag[None, :] * x[:, None]
    ) * math.pi**-0.25
    m = kernel.kernel @ packets
    q = np.einsum("xj,xj->j", packets.conj(), m).real * kernel.dx**2 / math.pi
    q = q.reshape(re_axis.size, im_axis.size)
    if q.min() < -_Q_BOUND_SLACK or q.max() > 1.0 / math.pi + _Q_BOUND_SLACK:
        raise ValidationFailure(
            f"Q values outside [0, 1/pi]: min {q.min():.3e}, max {q.max():.3e}"
        )
    return HusimiMap(re_axis, im_axis, q, kernel.mode)


def density_snapshot(field) -> np.ndarray:
    """Total position-space probability density |psi_e|^2 + |psi_g|^2."""
    return field.density()


@dataclass(frozen=True)
class TimeScales:
    """Collapse, fractional-revival and revival times of the ring dynamics."""

    t_in: float
    t_frac: float
    t_rev: float


def timescales(p) -> TimeScales:
    """Characteristic times: t_in = sqrt(4 pi^2 lam^2 - 1), then lam and
    4 lam multiples for fractional and full revivals."""
    floor = 1.0 / (2.0 * math.pi)
    if p.lam < floor:
        raise ValueError(
            f"timescales need lam >= 1/(2 pi) = {floor:.6f}, got {p.lam}"
        )
    t_in = math.sqrt(max(4.0 * math.pi**2 * p.lam**2 - 1.0, 0.0))
    return TimeScales(t_in=t_in, t_frac=p.lam * t_in, t_rev=4.0 * p.lam * t_in)


@dataclass(frozen=True)
class RevivalPeak:
    time: float
    height: float


def detect_revivals(times: np.ndarray, autocorr: np.ndarray, threshold: float = 0.5):
    """Local maxima of |autocorr| above threshold, parabolically refined."""
    y = np.abs(np.asarray(autocorr))
    t = np.asarray(times, dtype=float)
    peaks = []
    for i in range(1, y.size - 1):
        if y[i] < threshold or y[i] < y[i - 1] or y[i] <= y[i + 1]:
            continue
        denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
        if denom < 0.0:
            shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
            dt = t[i + 1] - t[i]
            peaks.append(RevivalPeak(t[i] + shift * dt, y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift))
        else:
            peaks.append(RevivalPeak(t[i], y[i]))
    return peaks


def ring_profile(field, radius: float, n_samples: int = 256):
    """Probability density sampled on a circle by bilinear interpolation."""
    grid = field.grid
    angles = 2.0 * math.pi * np.arange(n_samples) / n_samples
    xs = radius * np.cos(angles)
    ys = radius * np.sin(angles)
    dens = field.density()
    fx = (xs + grid.half_width) / grid.dx
    fy = (ys + grid.half_width) / grid.dx
    i0 = np.floor(fx).astype(int)
    j0 = np.floor(fy).astype(int)
    if (i0 < 0).any() or (j0 < 0).any() or (i0 + 1 >= grid.n).any() or (j0 + 1 >= grid.n).any():
        raise ValueError("ring leaves the grid")
    tx = fx - i0
    ty = fy - j0
    vals = (
        dens[i0, j0] * (1 - tx) * (1 - ty)
        + dens[i0 + 1, j0] * tx * (1 - ty)
        + dens[i0, j0 + 1] * (1 - tx) * ty
        + dens[i0 + 1, j0 + 1] * tx * ty
    )
    return angles, vals
