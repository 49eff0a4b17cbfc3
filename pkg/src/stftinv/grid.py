"""Uniform grids on a truncated real line, trapezoidal quadrature and L^p norms.

A function on the real line is represented by its samples on an equispaced
grid covering ``[center - L, center + L]``.  Every integral in the package is
eventually reduced to :func:`quadrature` (trapezoid rule with half weights at
both ends), so errors made here propagate everywhere else.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import NumericValidationError

#: Default half-width of the signal domain.
DEFAULT_HALF_WIDTH = 16.0
#: Default number of grid points (2049 when a symmetric odd grid is requested).
DEFAULT_NUM_POINTS = 2048


@dataclass(frozen=True)
class UniformGrid:
    """Equispaced grid ``x_k = center + (k - (N-1)/2) * dx`` for ``k = 0..N-1``.

    Parameters
    ----------
    half_width : float
        Half the length ``L`` of the covered interval.
    num_points : int
        Number of grid points ``N >= 2``.
    center : float, optional
        Midpoint of the interval.  Symmetric grids (the default) have
        ``center = 0``; audio grids starting at ``t = 0`` do not.
    """

    half_width: float
    num_points: int
    center: float = 0.0

    def __post_init__(self):
        n = self.num_points
        if isinstance(n, bool) or int(n) != n or n < 2:
            raise NumericValidationError(f"num_points must be an integer >= 2, got {n!r}")
        object.__setattr__(self, "num_points", int(n))
        L = float(self.half_width)
        if not math.isfinite(L) or L <= 0:
            raise NumericValidationError(f"half_width must be finite and > 0, got {self.half_width!r}")
        object.__setattr__(self, "half_width", L)
        c = float(self.center)
        if not math.isfinite(c):
            raise NumericValidationError(f"center must be finite, got {self.center!r}")
        object.__setattr__(self, "center", c)

    @classmethod
    def from_spacing(cls, start: float, spacing: float, num_points: int) -> "UniformGrid":
        """Grid with first point ``start`` and step ``spacing``."""
        if not spacing > 0:
            raise NumericValidationError(f"spacing must be > 0, got {spacing!r}")
        L = 0.5 * spacing * (num_points - 1)
        return cls(L, num_points, start + L)

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.num_points - 1)

    @property
    def start(self) -> float:
        return float(self.points[0])

    @property
    def stop(self) -> float:
        return float(self.points[-1])

    @cached_property
    def points(self) -> np.ndarray:
        n = self.num_points
        offsets = np.arange(n, dtype=float) - 0.5 * (n - 1)
        pts = self.center + offsets * self.spacing
        pts.flags.writeable = False
        return pts

    @cached_property
    def weights(self) -> np.ndarray:
        """Trapezoid weights (without the ``dx`` factor)."""
        w = np.ones(self.num_points)
        w[0] = w[-1] = 0.5
        w.flags.writeable = False
        return w

    @property
    def measure(self) -> float:
        """Length of the covered interval, ``2L``."""
        return 2.0 * self.half_width

    def contains(self, other: "UniformGrid") -> bool:
        tol = 4 * np.finfo(float).eps * max(abs(self.start), abs(self.stop), 1.0)
        return other.start >= self.start - tol and other.stop <= self.stop + tol

    def describe(self) -> dict:
        return {"half_width": self.half_width, "num_points": self.num_points, "center": self.center}


def default_grid(odd: bool = False) -> UniformGrid:
    """The package default grid: ``L = 16`` with 2048 points (2049 if ``odd``)."""
    return UniformGrid(DEFAULT_HALF_WIDTH, DEFAULT_NUM_POINTS + (1 if odd else 0))


class SampledSignal:
    """Complex samples of a function on a :class:`UniformGrid`.

    Values are stored as a read-only ``complex128`` array; operations always
    return new signals.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: UniformGrid, values):
        vals = np.array(values, dtype=np.complex128, copy=True)
        if vals.ndim != 1 or vals.shape[0] != grid.num_points:
            raise NumericValidationError(
                f"values must be 1-d with {grid.num_points} entries, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise NumericValidationError("signal contains non-finite samples")
        vals.flags.writeable = False
        self.grid = grid
        self.values = vals

    @classmethod
    def from_function(cls, grid: UniformGrid, fun) -> "SampledSignal":
        return cls(grid, fun(grid.points))

    @classmethod
    def zeros(cls, grid: UniformGrid) -> "SampledSignal":
        return cls(grid, np.zeros(grid.num_points))

    def with_values(self, values) -> "SampledSignal":
        return type(self)(self.grid, values)

    def __len__(self):
        return self.grid.num_points

    def __repr__(self):
        return f"{type(self).__name__}(grid={self.grid!r})"

    def _check_same_grid(self, other):
        if other.grid != self.grid:
            raise NumericValidationError("signals live on different grids")

    def __add__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same_grid(other)
            return self.with_values(self.values + other.values)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same_grid(other)
            return self.with_values(self.values - other.values)
        return NotImplemented

    def __mul__(self, c):
        if isinstance(c, (int, float, complex, np.number)):
            return self.with_values(c * self.values)
        return NotImplemented

    __rmul__ = __mul__


@dataclass(frozen=True)
class LpExponent:
    """Exponent ``p`` of an L^p norm together with its conjugate ``p'``.

    ``p`` must lie in ``(1, inf]``.  ``p = 1`` is accepted only with
    ``extended=True`` since the convergence results do not cover it.
    """

    p: float
    extended: bool = False

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p):
            raise NumericValidationError("p is NaN")
        if p < 1 or (p == 1 and not self.extended):
            raise NumericValidationError(
                f"p must lie in (1, inf]; got {self.p!r}"
                + ("" if p < 1 else " (p = 1 needs the extended flag)"))
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, text, extended: bool = False) -> "LpExponent":
        if isinstance(text, LpExponent):
            return text
        if isinstance(text, str):
            t = text.strip().lower()
            if t in ("inf", "infinity", "oo", "∞"):
                return cls(math.inf, extended)
            try:
                value = float(t)
            except ValueError:
                raise NumericValidationError(f"cannot parse exponent {text!r}") from None
            return cls(value, extended)
        return cls(float(text), extended)

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.p)

    @property
    def conjugate(self) -> float:
        if self.is_infinite:
            return 1.0
        if self.p == 1:
            return math.inf
        return self.p / (self.p - 1.0)

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return repr(self.p) if self.p != int(self.p) else str(int(self.p))


def _require_finite(values):
    if not np.all(np.isfinite(values)):
        raise NumericValidationError("integrand contains non-finite samples")


def quadrature(s: SampledSignal) -> complex:
    """Trapezoidal approximation of the integral of ``s`` over its grid."""
    _require_finite(s.values)
    g = s.grid
    return complex(np.sum(g.weights * s.values) * g.spacing)


def lp_norm(s: SampledSignal, p) -> float:
    """Discrete L^p norm ``(sum |s_k|^p w_k dx)^(1/p)``; max modulus for ``p = inf``."""
    p = LpExponent.parse(p)
    _require_finite(s.values)
    mag = np.abs(s.values)
    if p.is_infinite:
        return float(mag.max())
    peak = mag.max()
    if peak == 0:
        return 0.0
    # scale by the peak so that large p neither overflows nor underflows
    scaled = mag / peak
    total = np.sum(s.grid.weights * scaled ** p.p) * s.grid.spacing
    return float(peak * total ** (1.0 / p.p))


def resample_to(s: SampledSignal, grid: UniformGrid, method: str = "cubic") -> SampledSignal:
    """Interpolate ``s`` onto ``grid``.

    ``method`` is ``"cubic"`` (not-a-knot cubic spline) or ``"bandlimited"``
    (Fourier interpolation through the grid's representable band).
    Extrapolation beyond the source domain raises.
    """
    if grid == s.grid:
        return s
    if not s.grid.contains(grid):
        raise NumericValidationError(
            f"target grid [{grid.start}, {grid.stop}] extends beyond source "
            f"domain [{s.grid.start}, {s.grid.stop}]")
    if method == "cubic":
        x = s.grid.points
        spline_re = CubicSpline(x, s.values.real)
        spline_im = CubicSpline(x, s.values.imag)
        xt = np.clip(grid.points, x[0], x[-1])
        return SampledSignal(grid, spline_re(xt) + 1j * spline_im(xt))
    if method == "bandlimited":
        from .fourier import forward_ft, inverse_ft

        return inverse_ft(forward_ft(s), grid)
    raise NumericValidationError(f"unknown interpolation method {method!r}")
