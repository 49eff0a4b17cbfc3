"""Truncated single-integral inversion of the windowed Fourier transform.

For truncation limits ``A1, A2 > 0`` and a window anchor ``x0``::

    (T f)(x) = int_{-A1}^{A2} (F_g f)(x - x0, w) exp(i x w) dw

tends to ``2 pi conj(g(x0)) f(x)`` as both limits grow.  The operator is
computed three ways that must agree:

kernel
    ``int f(y) K(x, y) dy`` with the closed-form kernel (O(N^2)).
multiplier
    ``T f = F^{-1}[h * f_hat]`` with
    ``h(y) = int_{y-A2}^{y+A1} conj(g_hat(w)) exp(-i x0 w) dw``.
modulation
    ``int conj(g_hat(w)) exp(-i x0 w) (M_{-w} S_A M_w f)(x) dw``,
    symmetric truncations only.  No ``1/2pi`` prefactor appears here: it is
    already carried by ``S_A``, whose multiplier is the indicator of
    ``[-A, A]``.

The classical double-integral inversion is included as a baseline.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.signal

from . import _backend, _pykernels
from .errors import NumericValidationError
from .fourier import (SpectrumSignal, band_limit, clamp_to_band, dirichlet_lattice, forward_ft,
                      frequency_grid, inverse_ft, lattice_sum)
from .grid import SampledSignal, UniformGrid
from .stft import StftMatrix
from .windows import Window, require_invertible

GL_X, GL_W = np.polynomial.legendre.leggauss(8)

#: Relative mass below which a modulation node contributes nothing.
NODE_SKIP_RTOL = 1e-15
#: Default mass radius of g_hat covered by the modulation quadrature.
OMEGA_MASS_RTOL = 1e-12
#: Coverage threshold that triggers the narrow-grid warning.
OMEGA_WARN_RTOL = 1e-10
_MOD_BLOCK = 256
_TAIL_REFINE = 8


class ModulationGridWarning(UserWarning):
    """The modulation quadrature grid does not cover the relevant part of g_hat."""


@dataclass(frozen=True)
class TruncationPair:
    """Frequency truncation ``[-A1, A2]`` of the inversion integral."""

    A1: float
    A2: float

    def __post_init__(self):
        for name in ("A1", "A2"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise NumericValidationError(f"{name} must be finite and > 0, got {getattr(self, name)!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def symmetric(cls, A: float) -> "TruncationPair":
        return cls(A, A)

    @classmethod
    def coerce(cls, t) -> "TruncationPair":
        if isinstance(t, TruncationPair):
            return t
        if isinstance(t, (tuple, list)):
            return cls(*t)
        return cls.symmetric(t)

    @property
    def is_symmetric(self) -> bool:
        return self.A1 == self.A2

    def clamped(self, grid: UniformGrid) -> tuple["TruncationPair", list[str]]:
        """Both limits clamped to the band of ``grid``, with warning records."""
        a1, w1 = clamp_to_band(self.A1, grid, "A1")
        a2, w2 = clamp_to_band(self.A2, grid, "A2")
        return TruncationPair(a1, a2), w1 + w2

    def __str__(self):
        return f"({self.A1:g}, {self.A2:g})"


@dataclass(frozen=True)
class Reconstruction:
    """Output of an inversion pathway together with its error diagnostics.

    Attributes
    ----------
    signal : SampledSignal
        The computed samples.
    pathway : str
    truncation : TruncationPair or None
        ``None`` for the double-integral baseline.
    window : Window
    tail_estimate : float
        Sup-norm bound on the truncation error from the spectral tails of
        ``f`` and ``g_hat``; ``nan`` where no such bound applies.
    band_edge_mass : float
        ``(1/2pi) int |f_hat|`` over the outer tenth of the grid band, a
        proxy for discretization error.
    warnings : tuple of str
    """

    signal: SampledSignal
    pathway: str
    truncation: TruncationPair | None
    window: Window
    tail_estimate: float = math.nan
    band_edge_mass: float = 0.0
    warnings: tuple = ()
    extra: dict = field(default_factory=dict)

    @property
    def grid(self) -> UniformGrid:
        return self.signal.grid

    @property
    def values(self) -> np.ndarray:
        return self.signal.values

    def metadata(self) -> dict:
        t = self.truncation
        meta = {
            "pathway": self.pathway,
            "A1": t.A1 if t else None,
            "A2": t.A2 if t else None,
            "x0": self.window.x0,
            "window": self.window.spec(),
            "tail_estimate": self.tail_estimate,
            "band_edge_mass": self.band_edge_mass,
            "warnings": list(self.warnings),
        }
        meta.update(self.extra)
        return meta


# ------------------------------------------------------------------ tail bound

class SpectralTail:
    """Cumulative ``|f_hat|`` masses of a signal, for the truncation tail bound.

    The spectrum is sampled at one eighth of the default frequency spacing.
    Masses between samples are linearly interpolated, which overestimates
    where ``|f_hat|`` is convex, as it is in decaying tails.  Left and right
    cumulative sums are kept separately, so tiny tails are never obtained by
    cancellation.
    """

    def __init__(self, f: SampledSignal):
        self.grid = f.grid
        n = (f.grid.num_points - 1) * _TAIL_REFINE + 1
        fg = UniformGrid(band_limit(f.grid), n)
        mag = np.abs(forward_ft(f, fg).values)
        dw = fg.spacing
        steps = 0.5 * (mag[1:] + mag[:-1]) * dw
        self.omega = fg.points
        self.left = np.concatenate(([0.0], np.cumsum(steps)))
        self.right = np.concatenate((np.cumsum(steps[::-1])[::-1], [0.0]))
        self.total = float(self.left[-1])

    def outside(self, lo, hi):
        """``int |f_hat|`` over ``y < lo`` or ``y > hi`` (zero beyond the band)."""
        return (np.interp(lo, self.omega, self.left, left=0.0, right=self.total)
                + np.interp(hi, self.omega, self.right, left=self.total, right=0.0))

    def mass_radius(self, rel_tol: float) -> float:
        """Smallest ``R`` on the sample grid with mass beyond ``|y| > R`` at most ``rel_tol`` times the total."""
        if self.total == 0.0:
            return 0.0
        out = self.outside(-self.omega[::-1][: len(self.omega) // 2 + 1],
                           self.omega[::-1][: len(self.omega) // 2 + 1])
        radii = self.omega[::-1][: len(self.omega) // 2 + 1]
        ok = out <= rel_tol * self.total
        return float(radii[ok][-1]) if np.any(ok) else float(radii[0])

    def bound(self, g: Window, trunc: TruncationPair) -> float:
        """``(1/2pi) int |g_hat(w)| int_{y < w-A1 or y > w+A2} |f_hat(y)| dy dw``."""
        if self.total == 0.0:
            return 0.0
        W = band_limit(self.grid) + max(trunc.A1, trunc.A2)
        dw = self.omega[1] - self.omega[0]
        m = int(math.ceil(2 * W / dw)) + 1
        w = np.linspace(-W, W, m)
        inner = np.abs(g.eval_g_hat(w)) * self.outside(w - trunc.A1, w + trunc.A2)
        body = float(np.trapezoid(inner, w))
        return (body + self.total * g.g_hat_tail_mass(W)) / (2 * math.pi)


def tail_bound(f: SampledSignal, g: Window, trunc, spectral_tail: SpectralTail | None = None) -> float:
    """Sup-norm bound on ``T f - 2 pi conj(g(x0)) f`` from the spectral tails."""
    st = SpectralTail(f) if spectral_tail is None else spectral_tail
    return st.bound(g, TruncationPair.coerce(trunc))


def _band_edge_mass(F: SpectrumSignal) -> float:
    omega = band_limit(F.source_grid) if F.source_grid is not None else F.grid.half_width
    mask = np.abs(F.grid.points) > 0.9 * omega
    mag = np.where(mask, np.abs(F.values), 0.0)
    return float(np.sum(mag * F.grid.weights) * F.grid.spacing / (2 * math.pi))


def _finish(out: SampledSignal, f: SampledSignal, g: Window, trunc: TruncationPair, pathway: str,
            notes: list, F: SpectrumSignal | None = None, extra: dict | None = None) -> Reconstruction:
    F = forward_ft(f) if F is None else F
    return Reconstruction(out, pathway, trunc, g, tail_bound(f, g, trunc), _band_edge_mass(F),
                          tuple(notes), dict(extra or {}))


# ------------------------------------------------------------------ kernel

def kernel_eval(g: Window, trunc, x, y):
    """The inversion kernel ``K(x, y)`` so that ``(T f)(x) = int f(y) K(x, y) dy``.

    ``K = conj(g(u + x0)) * int_{-A1}^{A2} exp(-i u w) dw`` with ``u = y - x``,
    written with sines and switched to its Taylor expansion for
    ``|u| < 1e-6``.  Accepts scalars or broadcastable arrays.
    """
    t = TruncationPair.coerce(trunc)
    u = np.subtract(np.asarray(y, dtype=float), np.asarray(x, dtype=float))
    re, im = _pykernels.truncated_exponential_integral(u, t.A1, t.A2)
    k = np.conj(np.asarray(g.eval_g(u + g.x0), dtype=complex)) * (re + 1j * im)
    return complex(k) if np.ndim(k) == 0 else k


def invert_kernel(f: SampledSignal, g: Window, trunc, backend=None) -> Reconstruction:
    """``T f`` by direct quadrature of ``int f(y) K(x, y) dy`` at every grid point.

    Smooth windows use the trapezoid rule on the grid.  Windows with kinks
    or compact support use Gauss-Legendre panels split at the kinks and at
    grid nodes, with ``f`` interpolated locally; the trapezoid rule would
    lose its accuracy at the kinks.
    """
    t, notes = TruncationPair.coerce(trunc).clamped(f.grid)
    grid = f.grid
    x = grid.points
    if not np.any(f.values):
        out = np.zeros(grid.num_points, complex)
    elif g.breakpoints is None:
        a = f.values * grid.weights * grid.spacing
        out = _backend.kernel_trapezoid(a, x, x, g, t.A1, t.A2, backend=backend)
    else:
        out = _backend.kernel_panels(f.values, grid.start, grid.spacing, x, g, t.A1, t.A2,
                                     GL_X, GL_W, backend=backend)
    return _finish(f.with_values(out), f, g, t, "kernel", notes)


# ------------------------------------------------------------------ multiplier

@dataclass(frozen=True)
class MultiplierProfile:
    """Samples of ``h(y) = int_{y-A2}^{y+A1} conj(g_hat(w)) exp(-i x0 w) dw``.

    ``total_variation_estimate`` is ``sum_j |h(y_{j+1}) - h(y_j)|`` over the
    frequency grid; ``provenance`` says whether ``g_hat`` came from a closed
    form or an interpolated table.
    """

    truncation: TruncationPair
    window: Window
    grid: UniformGrid
    samples: np.ndarray
    total_variation_estimate: float
    provenance: str


def _panel_edges(points: np.ndarray, hmax: float) -> np.ndarray:
    pts = np.unique(points)
    gaps = np.diff(pts)
    pieces = np.maximum(np.ceil(gaps / hmax).astype(int), 1)
    if np.all(pieces == 1):
        return pts
    frac = [pts[i] + gaps[i] * np.arange(pieces[i]) / pieces[i] for i in range(len(gaps))]
    return np.concatenate(frac + [pts[-1:]])


def _weighted_ghat_antiderivative(g: Window, points: np.ndarray):
    """``H(p) = int_{p_min}^{p} conj(g_hat(w)) exp(-i x0 w) dw`` at every requested point."""
    hmax = 0.5 / max(g.scale, abs(g.x0), 1e-3)
    edges = _panel_edges(points, hmax)
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * GL_X[None, :]
    vals = np.conj(np.asarray(g.eval_g_hat(nodes), dtype=complex)) * np.exp(-1j * g.x0 * nodes)
    pieces = np.sum(vals * GL_W[None, :], axis=1) * half
    H = np.concatenate(([0j], np.cumsum(pieces)))
    return edges, H


def multiplier_eval(g: Window, trunc, freq_grid: UniformGrid) -> MultiplierProfile:
    """Sample the multiplier ``h`` of ``T`` on ``freq_grid``.

    ``h(y) = H(y + A1) - H(y - A2)`` where ``H`` is an antiderivative built by
    Gauss-Legendre panels over the sorted endpoints, so every sample is an
    accurate quadrature of the closed-form (or tabulated) ``g_hat``.
    """
    t = TruncationPair.coerce(trunc)
    y = freq_grid.points
    upper, lower = y + t.A1, y - t.A2
    edges, H = _weighted_ghat_antiderivative(g, np.concatenate((upper, lower)))
    idx_hi = np.searchsorted(edges, upper)
    idx_lo = np.searchsorted(edges, lower)
    h = H[idx_hi] - H[idx_lo]
    h.flags.writeable = False
    tv = float(np.sum(np.abs(np.diff(h))))
    return MultiplierProfile(t, g, freq_grid, h, tv, g.g_hat_provenance)


def invert_multiplier(f: SampledSignal, g: Window, trunc, backend=None) -> Reconstruction:
    """``T f = F^{-1}[h * f_hat]`` with ``h`` from :func:`multiplier_eval`."""
    t, notes = TruncationPair.coerce(trunc).clamped(f.grid)
    F = forward_ft(f, backend=backend)
    profile = multiplier_eval(g, t, F.grid)
    out = inverse_ft(F.with_values(F.values * profile.samples), f.grid, backend=backend)
    extra = {"total_variation": profile.total_variation_estimate,
             "g_hat_provenance": profile.provenance}
    return _finish(out, f, g, t, "multiplier", notes, F, extra)


# ------------------------------------------------------------------ modulation

def _default_omega_grid(f: SampledSignal, g: Window) -> UniformGrid:
    fg = frequency_grid(f.grid)
    R = min(g.g_hat_mass_radius(OMEGA_MASS_RTOL), fg.half_width)
    dw = fg.spacing
    k = int(math.floor(R / dw + 1e-9))
    if k == 0:
        return UniformGrid(dw, 3)
    return UniformGrid(k * dw, 2 * k + 1)


def invert_modulation(f: SampledSignal, g: Window, A: float, omega_grid: UniformGrid | None = None,
                      backend=None) -> Reconstruction:
    """``T_A f`` as a superposition of modulated Dirichlet partial sums.

    The outer integral over ``w`` is a trapezoid sum on ``omega_grid``
    (default: the frequency grid cut to the radius holding all but ``1e-12``
    of ``||g_hat||_1``).  For each node ``S_A M_w f`` is the trapezoid
    quadrature of the Dirichlet convolution, evaluated as a Toeplitz product
    through FFT convolution.  Nodes whose band ``[w - A, w + A]`` carries no
    spectral mass of ``f`` are skipped.  Node contributions are summed in
    node order, so results are reproducible.
    """
    if isinstance(A, (TruncationPair, tuple, list)):
        t = TruncationPair.coerce(A)
        if not t.is_symmetric:
            raise NumericValidationError("the modulation pathway needs A1 == A2")
        A = t.A1
    if not (math.isfinite(A) and A > 0):
        raise NumericValidationError(f"cutoff A must be finite and > 0, got {A!r}")
    t, notes = TruncationPair.symmetric(A).clamped(f.grid)
    A = t.A1
    grid = f.grid
    og = _default_omega_grid(f, g) if omega_grid is None else omega_grid
    F = forward_ft(f, backend=backend)
    st = SpectralTail(f)
    if st.total > 0:
        need = min(g.g_hat_mass_radius(OMEGA_WARN_RTOL), A + st.mass_radius(OMEGA_WARN_RTOL))
        cover = min(-og.start, og.stop)
        if cover < need * (1 - 1e-9):
            msg = (f"omega grid covers |w| <= {cover:.6g} but g_hat and f_hat need "
                   f"|w| <= {need:.6g}")
            warnings.warn(msg, ModulationGridWarning, stacklevel=2)
            notes.append(msg)

    omega = og.points
    wts = og.weights * og.spacing
    band_mass = st.total - st.outside(omega - A, omega + A) if st.total > 0 else np.zeros_like(omega)
    active = np.nonzero(band_mass > NODE_SKIP_RTOL * st.total)[0]

    x = grid.points
    n = grid.num_points
    kernel = dirichlet_lattice(grid, A)
    base = f.values * grid.weights * grid.spacing
    coef = np.conj(np.asarray(g.eval_g_hat(omega), dtype=complex)) * np.exp(-1j * g.x0 * omega) * wts
    total = np.zeros(n, complex)
    for lo in range(0, len(active), _MOD_BLOCK):
        cols = active[lo:lo + _MOD_BLOCK]
        w = omega[cols]
        phase = np.exp(-1j * np.multiply.outer(x, w))
        P = base[:, None] * phase
        R = scipy.signal.fftconvolve(kernel[:, None], P, axes=0)[n - 1:2 * n - 1]
        total += np.sum(R * np.conj(phase) * coef[cols][None, :], axis=1)
    out = f.with_values(total)
    extra = {"omega_nodes": int(og.num_points), "omega_nodes_used": int(len(active)),
             "omega_half_width": og.half_width}
    return _finish(out, f, g, t, "modulation", notes, F, extra)


# ------------------------------------------------------------------ baseline

def invert_double_integral(S: StftMatrix, g: Window, grid: UniformGrid | None = None) -> Reconstruction:
    """Classical inversion ``f(x) = (1/(2pi ||g||_2^2)) int int F(t, w) g(x - t) e^{ixw} dw dt``.

    Both integrals are trapezoid sums over the grids of ``S``; the output
    lives on ``grid`` (default: the time grid of ``S``).
    """
    tg, fg = S.time_grid, S.freq_grid
    out_grid = tg if grid is None else grid
    if tg.num_points < 2 or fg.num_points < 2:
        raise NumericValidationError("double integral needs at least 2 samples on each axis")
    norm = g.l2_norm_sq
    if not (math.isfinite(norm) and norm > 0):
        raise NumericValidationError(f"window L2 norm must be > 0, got {norm!r}")
    if not np.any(S.values):
        out = SampledSignal.zeros(out_grid)
    else:
        a = S.values * (fg.weights * fg.spacing / (2 * math.pi))[None, :]
        inner = lattice_sum(a, fg, out_grid, +1)
        wt = tg.weights * tg.spacing
        win = np.asarray(g.eval_g(np.subtract.outer(tg.points, out_grid.points)), dtype=complex)
        out = SampledSignal(out_grid, np.einsum("i,ik,ik->k", wt, inner, win) / norm)
    return Reconstruction(out, "double", None, g, math.nan, 0.0, (),
                          {"time_points": tg.num_points, "freq_points": fg.num_points})


# ------------------------------------------------------------------ normalized

PATHWAYS = ("kernel", "multiplier", "modulation")


def apply_truncated(f: SampledSignal, g: Window, trunc, pathway: str = "multiplier",
                    backend=None) -> Reconstruction:
    """Dispatch to one of the three ``T`` pathways by name."""
    if pathway == "kernel":
        return invert_kernel(f, g, trunc, backend=backend)
    if pathway == "multiplier":
        return invert_multiplier(f, g, trunc, backend=backend)
    if pathway == "modulation":
        return invert_modulation(f, g, TruncationPair.coerce(trunc), backend=backend)
    raise NumericValidationError(f"unknown pathway {pathway!r}; expected one of {PATHWAYS}")


def normalize(rec: Reconstruction) -> Reconstruction:
    """Divide a ``T f`` result by ``2 pi conj(g(x0))`` so it approximates ``f``."""
    g = rec.window
    require_invertible(g)
    c = 2 * math.pi * np.conj(g.g_at_anchor)
    return replace(rec, signal=rec.signal * (1.0 / c),
                   tail_estimate=rec.tail_estimate / abs(c),
                   extra={**rec.extra, "normalized": True})


def filter_bank_reconstruct(f: SampledSignal, g: Window, backend=None) -> Reconstruction:
    """Single-integral reconstruction of ``f`` at the full grid band.

    Evaluates ``T_A f`` with ``A`` the largest representable frequency and
    divides by ``2 pi conj(g(x0))``.  The attached tail estimate is the
    truncation bound scaled by ``1 / (2 pi |g(x0)|)``.
    """
    require_invertible(g)
    A = band_limit(f.grid)
    rec = invert_multiplier(f, g, TruncationPair.symmetric(A), backend=backend)
    return replace(normalize(rec), pathway="filter-bank")
