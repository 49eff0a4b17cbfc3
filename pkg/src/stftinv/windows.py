"""Window functions with closed-form Fourier transforms.

Every window carries what the inversion machinery needs besides point
values: its transform ``g_hat``, the L^1 norm of ``g_hat``, the tail mass
``int_{|w|>W} |g_hat|``, its squared L^2 norm, and the kink locations that
the breakpoint-aware quadrature must respect.

Built-in kinds (``scale`` is ``sigma`` for the gaussian, the half-support
otherwise):

============  ==================================  =====================================
kind          g(x)                                g_hat(w)
============  ==================================  =====================================
gaussian      exp(-x^2 / (2 s^2))                 s sqrt(2 pi) exp(-s^2 w^2 / 2)
hann          cos^2(pi x / (2 s)) on [-s, s]      s pi^2 sin(a) / (a (pi^2 - a^2)), a=sw
triangular    (1 - |x| / s)_+                     s (sin(a/2) / (a/2))^2, a = s w
============  ==================================  =====================================
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import erfc, sici

from .errors import NumericValidationError

#: Anchors with |g(x0)| below this are tagged non-invertible.
ANCHOR_THRESHOLD = 1e-12

KINDS = ("gaussian", "hann", "triangular", "custom")

_GL_X, _GL_W = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class Window:
    """A window ``g`` together with the data the inversion formulas need."""

    kind: str
    scale: float
    x0: float
    eval_g: Callable = field(repr=False, compare=False)
    eval_g_hat: Callable = field(repr=False, compare=False)
    l1_norm_g_hat: float = field(repr=False)
    g_at_anchor: complex = field(repr=False)
    l2_norm_sq: float = field(repr=False)
    support_hint: Optional[tuple] = None
    breakpoints: Optional[tuple] = field(default=None, repr=False)
    g_hat_provenance: str = field(default="closed-form", repr=False)
    _tail_mass: Callable = field(default=None, repr=False, compare=False)

    @property
    def invertible(self) -> bool:
        return abs(self.g_at_anchor) >= ANCHOR_THRESHOLD

    def g_hat_tail_mass(self, W: float) -> float:
        """``int_{|w| > W} |g_hat(w)| dw`` (an upper bound where no closed form exists)."""
        return float(self._tail_mass(max(float(W), 0.0)))

    def g_hat_mass_radius(self, rel_tol: float) -> float:
        """Smallest ``R`` (to 1%) with tail mass beyond ``R`` at most ``rel_tol * ||g_hat||_1``."""
        target = rel_tol * self.l1_norm_g_hat
        if self.g_hat_tail_mass(0.0) <= target:
            return 0.0
        hi = 1.0 / self.scale
        while self.g_hat_tail_mass(hi) > target:
            hi *= 2.0
            if hi > 1e300:
                return math.inf
        lo = hi / 2.0
        while hi - lo > 0.01 * hi:
            mid = 0.5 * (lo + hi)
            if self.g_hat_tail_mass(mid) > target:
                lo = mid
            else:
                hi = mid
        return hi

    def with_anchor(self, x0: float) -> "Window":
        """Same window with a different anchor ``x0``."""
        from dataclasses import replace

        return replace(self, x0=float(x0), g_at_anchor=complex(self.eval_g(np.array([float(x0)]))[0]))

    def spec(self) -> dict:
        return {"kind": self.kind, "sigma": self.scale, "x0": self.x0}


# ---------------------------------------------------------------- hann helpers

def _hann_hat_unit(a):
    a = np.abs(np.asarray(a, dtype=float))
    pi = np.pi
    near0 = a < 0.5 * pi
    safe = np.where(near0, pi, a)
    far = pi ** 2 * np.sinc((safe - pi) / pi) / (safe * (pi + safe))
    close = pi ** 2 * np.sinc(a / pi) / (pi ** 2 - np.where(near0, a, 0.0) ** 2)
    return np.where(near0, close, far)


@lru_cache(maxsize=4096)
def _hann_abs_tail_unit(a0: float) -> float:
    """``int_{a0}^inf |hann_hat(a)| da`` for the unit-scale hann window."""
    pi = math.pi
    periods = 4000
    first = max(math.ceil(a0 / pi), 1) * pi
    edges = np.concatenate(([a0], first + pi * np.arange(periods + 1)))
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    body = float(np.sum(half[:, None] * _GL_W[None, :] * np.abs(_hann_hat_unit(nodes))))
    K = edges[-1]
    # mean of |sin| is 2/pi and |g_hat| ~ pi^2 |sin a| / a^3 beyond K
    return body + pi / K ** 2


def _triangular_tail_unit(a0: float) -> float:
    """``int_{a0}^inf (sin(a/2)/(a/2))^2 da`` in closed form."""
    if a0 <= 0.0:
        return math.pi
    si, _ = sici(a0)
    return 2.0 * (1.0 - math.cos(a0)) / a0 + math.pi - 2.0 * float(si)


# ---------------------------------------------------------------- constructors

def _gaussian(s, x0):
    def g(x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * (x / s) ** 2)

    def g_hat(w):
        w = np.asarray(w, dtype=float)
        return s * math.sqrt(2 * math.pi) * np.exp(-0.5 * (s * w) ** 2)

    def tail(W):
        return 2 * math.pi * float(erfc(s * W / math.sqrt(2.0)))

    return dict(eval_g=g, eval_g_hat=g_hat, l1_norm_g_hat=2 * math.pi,
                l2_norm_sq=s * math.sqrt(math.pi), support_hint=None, breakpoints=None,
                _tail_mass=tail)


def _hann(s, x0):
    def g(x):
        x = np.asarray(x, dtype=float)
        return np.where(np.abs(x) <= s, np.cos(0.5 * np.pi * x / s) ** 2, 0.0)

    def g_hat(w):
        return s * _hann_hat_unit(s * np.asarray(w, dtype=float))

    def tail(W):
        return 2.0 * _hann_abs_tail_unit(round(s * W, 12))

    return dict(eval_g=g, eval_g_hat=g_hat, l1_norm_g_hat=tail(0.0),
                l2_norm_sq=0.75 * s, support_hint=(-s, s), breakpoints=(-s, s),
                _tail_mass=tail)


def _triangular(s, x0):
    def g(x):
        x = np.asarray(x, dtype=float)
        return np.maximum(1.0 - np.abs(x) / s, 0.0)

    def g_hat(w):
        a = s * np.asarray(w, dtype=float)
        return s * np.sinc(a / (2 * np.pi)) ** 2

    def tail(W):
        return 2.0 * _triangular_tail_unit(s * W)

    return dict(eval_g=g, eval_g_hat=g_hat, l1_norm_g_hat=2 * math.pi,
                l2_norm_sq=2.0 * s / 3.0, support_hint=(-s, s), breakpoints=(-s, 0.0, s),
                _tail_mass=tail)


def _check_continuity(g, scale, lo, hi):
    """Reject evaluators whose largest sample-to-sample jump does not shrink under refinement."""
    jumps = []
    for n in (4097, 16385):
        v = np.asarray(g(np.linspace(lo, hi, n)), dtype=complex)
        jumps.append(np.max(np.abs(np.diff(v))))
    peak = np.max(np.abs(np.asarray(g(np.linspace(lo, hi, 4097)), dtype=complex)))
    if jumps[0] > 1e-9 * max(peak, 1e-300) and jumps[1] > 0.9 * jumps[0]:
        raise NumericValidationError("custom window is not continuous on the sampling grid")


def _abs_integral(fun, lo, hi, n):
    x = np.linspace(lo, hi, n)
    return float(np.trapezoid(np.abs(np.asarray(fun(x), dtype=complex)), x))


def _custom(s, x0, g, g_hat, support, breakpoints, l1_norm_g_hat):
    if g is None or g_hat is None:
        raise NumericValidationError("custom windows need both a g and a g_hat evaluator")
    provenance = "closed-form"
    if isinstance(g_hat, tuple):
        omega, vals = (np.asarray(v) for v in g_hat)
        vals = vals.astype(complex)
        re, im = CubicSpline(omega, vals.real), CubicSpline(omega, vals.imag)
        w_lo, w_hi = float(omega[0]), float(omega[-1])

        def table_hat(w):
            w = np.asarray(w, dtype=float)
            inside = (w >= w_lo) & (w <= w_hi)
            wc = np.clip(w, w_lo, w_hi)
            return np.where(inside, re(wc) + 1j * im(wc), 0.0)

        g_hat = table_hat
        provenance = "table"
    reach = 64.0 * s if support is None else max(abs(support[0]), abs(support[1]))
    _check_continuity(g, s, -reach, reach)
    g_l1 = [_abs_integral(g, -r, r, 65537) for r in (reach / 2, reach)]
    if not np.isfinite(g_l1[1]) or abs(g_l1[1] - g_l1[0]) > 1e-3 * max(g_l1[1], 1e-300):
        if support is None:
            raise NumericValidationError("custom window g does not look integrable")
    w_reach = 2000.0 / s
    hat_l1 = [_abs_integral(g_hat, -r, r, 400001) for r in (w_reach / 2, w_reach)]
    if not np.isfinite(hat_l1[1]) or abs(hat_l1[1] - hat_l1[0]) > 1e-3 * max(hat_l1[1], 1e-300):
        raise NumericValidationError("custom window g_hat does not look integrable")
    l1 = float(l1_norm_g_hat) if l1_norm_g_hat is not None else hat_l1[1]
    x = np.linspace(-reach, reach, 65537)
    l2 = float(np.trapezoid(np.abs(np.asarray(g(x), dtype=complex)) ** 2, x))

    def tail(W):
        if W >= w_reach:
            return 0.0
        return max(l1 - _abs_integral(g_hat, -W, W, 200001), 0.0)

    brk = None
    if breakpoints is not None:
        brk = tuple(sorted(float(b) for b in breakpoints))
    elif support is not None:
        brk = (float(support[0]), float(support[1]))
    return dict(eval_g=g, eval_g_hat=g_hat, l1_norm_g_hat=l1, l2_norm_sq=l2,
                support_hint=tuple(support) if support is not None else None,
                breakpoints=brk, g_hat_provenance=provenance, _tail_mass=tail)


def make_window(kind: str = "gaussian", sigma: float = 1.0, x0: float = 0.0, *,
                g=None, g_hat=None, support=None, breakpoints=None,
                l1_norm_g_hat=None) -> Window:
    """Build a :class:`Window`.

    Parameters
    ----------
    kind : {'gaussian', 'hann', 'triangular', 'custom'}
    sigma : float
        Width parameter: standard deviation for the gaussian, half-support for
        hann and triangular, a nominal length scale for custom windows.
    x0 : float
        Anchor point; inversion divides by ``conj(g(x0))``.
    g, g_hat : callable, optional
        Evaluators for custom windows.  ``g_hat`` may also be a tuple
        ``(omega, values)`` of samples, interpolated with a cubic spline.
    support, breakpoints : sequence of float, optional
        Support interval and kink locations of a custom window.

    Windows whose anchor value is below ``1e-12`` in modulus are still
    returned but have ``invertible == False``.
    """
    if kind not in KINDS:
        raise NumericValidationError(f"unknown window kind {kind!r}; expected one of {KINDS}")
    s = float(sigma)
    if not (math.isfinite(s) and s > 0):
        raise NumericValidationError(f"window width must be finite and > 0, got {sigma!r}")
    x0 = float(x0)
    if not math.isfinite(x0):
        raise NumericValidationError("window anchor x0 must be finite")
    if kind == "gaussian":
        parts = _gaussian(s, x0)
    elif kind == "hann":
        parts = _hann(s, x0)
    elif kind == "triangular":
        parts = _triangular(s, x0)
    else:
        parts = _custom(s, x0, g, g_hat, support, breakpoints, l1_norm_g_hat)
    anchor = complex(np.asarray(parts["eval_g"](np.array([x0])), dtype=complex)[0])
    return Window(kind=kind, scale=s, x0=x0, g_at_anchor=anchor, **parts)


def require_invertible(g: Window) -> None:
    from .errors import DegenerateAnchorError

    if not g.invertible:
        raise DegenerateAnchorError(
            f"|g(x0)| = {abs(g.g_at_anchor):.3g} < {ANCHOR_THRESHOLD:g} at x0 = {g.x0}; "
            "the window cannot anchor an inversion")
