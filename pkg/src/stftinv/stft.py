"""Forward windowed Fourier transform and the Fourier-domain identity check.

``(F_g f)(t, w) = int f(x) conj(g(x - t)) exp(-i x w) dx``
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _pykernels
from .fourier import SpectrumSignal, forward_ft, frequency_grid, lattice_sum
from .grid import SampledSignal, UniformGrid
from .errors import NumericValidationError
from .windows import Window

GL_X, GL_W = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class StftMatrix:
    """Samples of ``(F_g f)(t_i, w_j)``; ``values[i, j]`` is time-major."""

    time_grid: UniformGrid
    freq_grid: UniformGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.time_grid.num_points, self.freq_grid.num_points):
            raise NumericValidationError(
                f"STFT values have shape {v.shape}, grids need "
                f"({self.time_grid.num_points}, {self.freq_grid.num_points})")
        if not np.all(np.isfinite(v)):
            raise NumericValidationError("STFT contains non-finite entries")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def at(self, i: int, j: int) -> complex:
        return complex(self.values[i, j])


def forward_stft(f: SampledSignal, g: Window, time_grid: UniformGrid | None = None,
                 freq_grid: UniformGrid | None = None, method: str = "auto") -> StftMatrix:
    """Trapezoid quadrature of the windowed transform on a time-frequency grid.

    Defaults: the signal grid for ``t`` and its representable band for ``w``.
    Each row is one transform of ``f * conj(g(. - t_i))``; rows for a compactly
    supported window vanish outside its support, so restricting the sum
    there changes nothing.
    """
    src = f.grid
    tg = src if time_grid is None else time_grid
    fg = frequency_grid(src) if freq_grid is None else freq_grid
    x = src.points
    rows = np.empty((tg.num_points, src.num_points), dtype=np.complex128)
    scale = src.weights * src.spacing
    for i, t in enumerate(tg.points):
        rows[i] = f.values * np.conj(g.eval_g(x - t)) * scale
    return StftMatrix(tg, fg, lattice_sum(rows, src, fg, -1, method))


def stft_at(f: SampledSignal, g: Window, t: float, omega: float) -> complex:
    """One STFT value with breakpoint-aware quadrature.

    Windows with kinks or compact support are integrated panel-wise between
    their breakpoints, with ``f`` interpolated at the Gauss nodes; smooth
    windows use the trapezoid sum over the whole grid.
    """
    grid = f.grid

    def phi(y):
        return np.conj(g.eval_g(y - t)) * np.exp(-1j * omega * y)

    if g.breakpoints is None:
        return complex(np.sum(f.values * phi(grid.points) * grid.weights) * grid.spacing)
    cuts = np.clip(t + np.asarray(g.breakpoints), grid.start, grid.stop)
    if cuts[-1] <= cuts[0]:
        return 0j
    return complex(_pykernels.panel_integral(f.values, grid.start, grid.spacing, cuts, phi,
                                             GL_X, GL_W))


def fourier_side_stft(F: SpectrumSignal, g: Window, t: float, omega: float) -> complex:
    """Right-hand side ``(1/2pi) (F_ghat f_hat)(w, -t) exp(-i t w)`` from a sampled spectrum."""
    y = F.grid.points
    integrand = F.values * np.conj(g.eval_g_hat(y - omega)) * np.exp(1j * y * t)
    total = np.sum(integrand * F.grid.weights) * F.grid.spacing
    return complex(total * np.exp(-1j * t * omega) / (2 * math.pi))


def check_fourier_domain_identity(f: SampledSignal, g: Window, sample_points,
                                  freq_grid: UniformGrid | None = None) -> float:
    """Largest ``|(F_g f)(t, w) - (1/2pi)(F_ghat f_hat)(w, -t) e^{-itw}|`` over the points.

    The left side is computed in the time domain, the right side from the
    sampled spectrum of ``f`` and the closed-form ``g_hat``.
    """
    if not np.any(f.values):
        return 0.0
    F = forward_ft(f, freq_grid)
    worst = 0.0
    for t, omega in sample_points:
        lhs = stft_at(f, g, t, omega)
        rhs = fourier_side_stft(F, g, t, omega)
        worst = max(worst, abs(lhs - rhs))
    return worst
