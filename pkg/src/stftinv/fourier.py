"""Continuous Fourier transform on uniform grids.

Convention::

    f_hat(w) = int f(x) exp(-i x w) dx
    f(x)     = (1 / 2 pi) int f_hat(w) exp(+i x w) dw

Both integrals are trapezoid sums.  Direct quadrature is the reference; the
FFT path reproduces the same sums whenever the grid spacings satisfy the
lattice condition ``dx * dw = 2 pi / P`` for an integer ``P``.  Writing
``x_k = x_s + k dx`` and ``w_j = w_s + j dw``::

    sum_k a_k e^{-i x_k w_j} = e^{-i x_s w_j} sum_k [a_k e^{-i k dx w_s}] e^{-2 pi i k j / P}

where samples with equal ``k mod P`` are folded together first.  No grid
is assumed to start at 0; the phase factors carry the grid origins.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
import scipy.fft

from . import _backend
from .errors import BandClampWarning, NumericValidationError
from .grid import SampledSignal, UniformGrid, quadrature

_LATTICE_RTOL = 1e-12


class SpectrumSignal(SampledSignal):
    """Samples of a Fourier transform on a frequency grid.

    ``source_grid`` remembers the time grid the spectrum was computed from,
    which is the default target of :func:`inverse_ft`.
    """

    __slots__ = ("source_grid",)

    def __init__(self, grid: UniformGrid, values, source_grid: UniformGrid | None = None):
        super().__init__(grid, values)
        self.source_grid = source_grid

    def with_values(self, values) -> "SpectrumSignal":
        return SpectrumSignal(self.grid, values, self.source_grid)


def frequency_grid(grid: UniformGrid, num_points: int | None = None) -> UniformGrid:
    """The representable band ``[-pi/dx, pi/dx]`` of a time grid.

    With the default ``num_points = N`` the pair satisfies the lattice
    condition with ``P = N - 1`` so transforms run through the FFT.
    """
    n = grid.num_points if num_points is None else num_points
    return UniformGrid(math.pi / grid.spacing, n)


def band_limit(grid: UniformGrid) -> float:
    return math.pi / grid.spacing


def clamp_to_band(A: float, grid: UniformGrid, what: str = "A") -> tuple[float, list[str]]:
    """Clamp a truncation limit to the grid band; returns the value and warning records."""
    omega = band_limit(grid)
    if A > omega:
        msg = f"{what}={A:g} exceeds the grid band {omega:g}; clamped"
        warnings.warn(msg, BandClampWarning, stacklevel=3)
        return omega, [msg]
    return float(A), []


def _lattice_period(src: UniformGrid, dst: UniformGrid):
    theta = src.spacing * dst.spacing
    P = int(round(2 * math.pi / theta))
    if P >= 1 and abs(P * theta / (2 * math.pi) - 1.0) < _LATTICE_RTOL:
        return P
    return None


def lattice_sum(a, src: UniformGrid, dst: UniformGrid, sign: int, method: str = "auto",
                backend=None) -> np.ndarray:
    """``out[..., j] = sum_k a[..., k] exp(sign i x_k w_j)`` along the last axis.

    ``method`` is ``'direct'``, ``'fft'`` or ``'auto'`` (FFT when the grids
    satisfy the lattice condition).
    """
    a = np.asarray(a, dtype=np.complex128)
    P = _lattice_period(src, dst)
    if method == "fft" and P is None:
        raise NumericValidationError("grids do not satisfy dx * dw = 2 pi / P for integer P")
    if method == "direct" or (method == "auto" and P is None):
        x, w = src.points, dst.points
        if a.ndim == 1:
            return _backend.dft(a, x, w, sign, backend=backend)
        return np.stack([_backend.dft(row, x, w, sign, backend=backend) for row in a])
    if method not in ("auto", "fft"):
        raise NumericValidationError(f"unknown transform method {method!r}")
    n, m = src.num_points, dst.num_points
    xs, ws = src.points[0], dst.points[0]
    k = np.arange(n)
    pre = np.exp(sign * 1j * ((k * src.spacing) * ws))
    b = a * pre
    if n > P:
        pad = (-n) % P
        b = np.concatenate([b, np.zeros(b.shape[:-1] + (pad,), complex)], axis=-1)
        b = b.reshape(b.shape[:-1] + (-1, P)).sum(axis=-2)
    elif n < P:
        b = np.concatenate([b, np.zeros(b.shape[:-1] + (P - n,), complex)], axis=-1)
    if sign < 0:
        spec = scipy.fft.fft(b, axis=-1)
    else:
        spec = scipy.fft.ifft(b, axis=-1) * P
    idx = np.arange(m) % P
    post = np.exp(sign * 1j * xs * dst.points)
    return spec[..., idx] * post


def forward_ft(f: SampledSignal, freq_grid: UniformGrid | None = None, method: str = "auto",
               backend=None) -> SpectrumSignal:
    """Trapezoid approximation of ``f_hat(w) = int f(x) exp(-i x w) dx`` on ``freq_grid``."""
    g = f.grid
    fg = frequency_grid(g) if freq_grid is None else freq_grid
    a = f.values * g.weights * g.spacing
    return SpectrumSignal(fg, lattice_sum(a, g, fg, -1, method, backend), g)


def inverse_ft(F: SpectrumSignal, time_grid: UniformGrid | None = None, method: str = "auto",
               backend=None) -> SampledSignal:
    """Trapezoid approximation of ``(1/2pi) int F(w) exp(+i x w) dw`` on ``time_grid``."""
    fg = F.grid
    tg = time_grid if time_grid is not None else getattr(F, "source_grid", None)
    if tg is None:
        tg = UniformGrid(math.pi / fg.spacing, fg.num_points)
    a = F.values * fg.weights * fg.spacing / (2 * math.pi)
    return SampledSignal(tg, lattice_sum(a, fg, tg, +1, method, backend))


def modulate(f: SampledSignal, omega: float) -> SampledSignal:
    """``(M_w f)(x) = exp(-i x w) f(x)``."""
    if omega == 0:
        return f
    return f.with_values(np.exp(-1j * omega * f.grid.points) * f.values)


def dirichlet_partial_sum(f: SampledSignal, A: float, method: str = "direct",
                          backend=None) -> SampledSignal:
    """Sharp frequency cutoff ``S_A f`` to ``[-A, A]``.

    ``method='direct'`` convolves with ``sin(A u) / (pi u)`` by trapezoid
    quadrature (diagonal set to the limit ``A / pi``); ``'spectral'`` masks the
    FFT-path spectrum.  The two agree when ``f_hat`` is negligible at ``+-A``.
    """
    if not A > 0:
        raise NumericValidationError(f"cutoff A must be > 0, got {A!r}")
    A, _ = clamp_to_band(A, f.grid)
    if method == "spectral":
        F = forward_ft(f)
        mask = np.abs(F.grid.points) <= A
        return inverse_ft(F.with_values(F.values * mask), f.grid)
    if method != "direct":
        raise NumericValidationError(f"unknown method {method!r}")
    g = f.grid
    a = f.values * g.weights * g.spacing
    return f.with_values(_backend.dirichlet(a, g.points, g.points, A, backend=backend))


def dirichlet_lattice(grid: UniformGrid, A: float) -> np.ndarray:
    """``sin(A u)/(pi u)`` at ``u = k dx`` for ``k = -(N-1) .. N-1``."""
    from ._pykernels import dirichlet_values

    n = grid.num_points
    return dirichlet_values(np.arange(-(n - 1), n) * grid.spacing, A)


def spectral_l1(F: SpectrumSignal) -> float:
    return float(quadrature(F.with_values(np.abs(F.values))).real)
