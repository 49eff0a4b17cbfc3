"""Empirical convergence and stability studies of the truncated inversion operator.

The lab measures, over sweeps of the truncation ``A``:

* L^p and sup errors of ``T_A f`` against its limit ``2 pi conj(g(x0)) f``,
  next to the computable tail bound;
* the empirical maximal function ``max_A |T_A f|``;
* operator ratios ``||T_A delta||_p / ||delta||_p`` on random perturbations.

Only limits are known, never rates, so the checks are monotone decay after
the first sweep element and final values below tail-derived tolerances.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import fixtures as _fixtures
from .errors import ConfigError, NumericValidationError
from .fourier import band_limit, clamp_to_band, forward_ft, spectral_l1
from .grid import LpExponent, SampledSignal, UniformGrid, default_grid, lp_norm
from .inversion import PATHWAYS, SpectralTail, TruncationPair, apply_truncated
from .windows import Window, make_window, require_invertible

#: Additive slack when comparing a measured error to its tail bound.
QUADRATURE_SLACK = 1e-7
#: Relative slack for "non-increasing" checks, covering rounding noise.
MONOTONE_RTOL = 1e-12
DEFAULT_ENVELOPE_FACTOR = 10.0
DEFAULT_NOISE_BAND = 16.0

REPORT_COLUMNS = ("fixture", "window", "pathway", "p", "A", "lp_error", "sup_error",
                  "operator_ratio", "tail_estimate", "runtime_ms")


def _non_increasing(values, rtol=MONOTONE_RTOL) -> bool:
    v = np.asarray(values, dtype=float)
    if len(v) < 2:
        return True
    scale = max(float(np.max(np.abs(v))), 1e-300)
    return bool(np.all(np.diff(v) <= rtol * scale))


def _strictly_decreasing(values) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(v) < 0))


@dataclass(frozen=True)
class SweepSpec:
    """One experiment: a fixture, a window, exponents, truncations, a pathway.

    ``A_list`` must be strictly increasing; entries beyond the grid band are
    clamped with a warning record, and ``p_list`` entries pass through
    :class:`~stftinv.grid.LpExponent` validation (``p = 1`` only with
    ``extended``).
    """

    fixture: str = "gaussian"
    window_kind: str = "gaussian"
    window_scale: float = 1.0
    x0: float = 0.0
    p_list: tuple = (2.0,)
    A_list: tuple = (1.0, 2.0, 4.0, 8.0, 16.0)
    pathway: str = "multiplier"
    grid: UniformGrid = field(default_factory=default_grid)
    extended: bool = False
    seed: int = _fixtures.DEFAULT_SEED

    def __post_init__(self):
        if not self.A_list:
            raise ConfigError("A list is empty")
        A = tuple(float(a) for a in self.A_list)
        if any(not (math.isfinite(a) and a > 0) for a in A):
            raise NumericValidationError(f"A values must be finite and > 0, got {A}")
        if any(b <= a for a, b in zip(A, A[1:])):
            raise ConfigError(f"A list must be strictly increasing, got {A}")
        object.__setattr__(self, "A_list", A)
        if not self.p_list:
            raise ConfigError("p list is empty")
        ps = tuple(LpExponent.parse(p, self.extended) for p in self.p_list)
        object.__setattr__(self, "p_list", ps)
        if self.pathway not in PATHWAYS:
            raise ConfigError(f"unknown pathway {self.pathway!r}; expected one of {PATHWAYS}")

    def window(self) -> Window:
        return make_window(self.window_kind, self.window_scale, self.x0)

    def signal(self) -> SampledSignal:
        return _fixtures.make_fixture(self.fixture, self.grid, self.seed)

    def describe(self) -> dict:
        return {"fixture": self.fixture, "window": self.window().spec(),
                "p_list": [str(p) for p in self.p_list], "A_list": list(self.A_list),
                "pathway": self.pathway, "grid": self.grid.describe(),
                "extended": self.extended, "seed": self.seed}


@dataclass(frozen=True)
class ErrorRecord:
    fixture: str
    window: str
    pathway: str
    p: str
    A: float
    lp_error: float
    sup_error: float
    operator_ratio: float
    tail_estimate: float
    runtime_ms: float

    def row(self) -> tuple:
        return tuple(getattr(self, c) for c in REPORT_COLUMNS)


@dataclass(frozen=True)
class ErrorReport:
    """Per-(A, p) error records of one sweep plus a run manifest."""

    spec: SweepSpec
    records: tuple
    manifest: dict
    warnings: tuple = ()

    def column(self, name: str, p=None) -> np.ndarray:
        rows = self.records if p is None else [r for r in self.records if r.p == str(LpExponent.parse(p, True))]
        return np.array([getattr(r, name) for r in rows])

    def within_tail_bound(self, slack: float = QUADRATURE_SLACK) -> bool:
        return all(r.lp_error <= r.tail_estimate + slack for r in self.records)


def _lp_tail(sup_bound: float, grid: UniformGrid, p: LpExponent) -> float:
    # on a domain of measure 2L, ||e||_p <= ||e||_inf (2L)^(1/p)
    return sup_bound if p.is_infinite else sup_bound * grid.measure ** (1.0 / p.p)


def run_sweep(spec: SweepSpec, signal: SampledSignal | None = None, timing: bool = False,
              backend=None) -> ErrorReport:
    """Apply ``T_A`` for every ``A`` of the sweep and record the error quantities.

    ``runtime_ms`` is measured only with ``timing=True`` and is ``0``
    otherwise, so reports are reproducible byte for byte.
    """
    g = spec.window()
    require_invertible(g)
    f = spec.signal() if signal is None else signal
    limit = f * (2 * math.pi * np.conj(g.g_at_anchor))
    tail = SpectralTail(f)
    f_norms = {str(p): lp_norm(f, p) for p in spec.p_list}
    notes = []
    records = []
    for A_raw in spec.A_list:
        A, w = clamp_to_band(A_raw, f.grid)
        notes.extend(w)
        t0 = time.perf_counter()
        rec = apply_truncated(f, g, A, spec.pathway, backend=backend)
        elapsed = (time.perf_counter() - t0) * 1e3 if timing else 0.0
        diff = rec.signal - limit
        sup_err = lp_norm(diff, "inf")
        sup_bound = tail.bound(g, TruncationPair.symmetric(A))
        for p in spec.p_list:
            fn = f_norms[str(p)]
            ratio = lp_norm(rec.signal, p) / fn if fn > 0 else 0.0
            records.append(ErrorRecord(spec.fixture, g.kind, spec.pathway, str(p), A,
                                       lp_norm(diff, p), sup_err, ratio,
                                       _lp_tail(sup_bound, f.grid, p), elapsed))
    manifest = {"spec": spec.describe(), "seed": spec.seed,
                "tolerances": {"quadrature_slack": QUADRATURE_SLACK,
                               "monotone_rtol": MONOTONE_RTOL},
                "band_limit": band_limit(f.grid)}
    return ErrorReport(spec, tuple(records), manifest, tuple(notes))


# ------------------------------------------------------------------ probes

@dataclass(frozen=True)
class MaximalRecord:
    fixture: str
    num_A: int
    ratio: float
    envelope: float

    @property
    def within_envelope(self) -> bool:
        return self.ratio <= self.envelope + QUADRATURE_SLACK


def maximal_function_probe(fixtures, g: Window, A_list, p=2, pathway: str = "multiplier",
                           backend=None) -> list:
    """``||max_A |T_A f| ||_p / ||f||_p`` per fixture, next to a computable envelope.

    ``fixtures`` holds ``(name, signal)`` pairs.  The envelope is
    ``(1/2pi) ||g_hat||_1 ||f_hat||_1 (2L)^(1/p) / ||f||_p``, which bounds the
    ratio because every ``|T_A f|`` is at most ``(1/2pi) ||g_hat||_1 ||f_hat||_1``.
    """
    p = LpExponent.parse(p)
    out = []
    for name, f in fixtures:
        fn = lp_norm(f, p)
        if fn == 0:
            out.append(MaximalRecord(name, len(A_list), 0.0, 0.0))
            continue
        peak = np.zeros(f.grid.num_points)
        for A in A_list:
            peak = np.maximum(peak, np.abs(apply_truncated(f, g, A, pathway, backend).values))
        ratio = lp_norm(SampledSignal(f.grid, peak), p) / fn
        sup = g.l1_norm_g_hat * spectral_l1(forward_ft(f)) / (2 * math.pi)
        out.append(MaximalRecord(name, len(A_list), ratio, _lp_tail(sup, f.grid, p) / fn))
    return out


@dataclass(frozen=True)
class StabilityReport:
    """Operator ratios ``||T delta||_p / ||delta||_p``.

    ``ratios[e, s, a]`` is for scale ``eps_list[e]``, sample ``s`` and
    truncation ``truncations[a]``; rows for ``eps = 0`` are NaN and listed
    in ``skipped``.
    """

    eps_list: tuple
    truncations: tuple
    ratios: np.ndarray
    seed: int
    envelope_factor: float
    skipped: tuple = ()

    def per_truncation(self) -> np.ndarray:
        """Largest ratio over scales and samples, per truncation."""
        if np.all(np.isnan(self.ratios)):
            return np.zeros(len(self.truncations))
        return np.nanmax(self.ratios, axis=(0, 1))

    @property
    def spread(self) -> float:
        r = self.per_truncation()
        if r.min() == 0:
            return 1.0 if r.max() == 0 else math.inf
        return float(r.max() / r.min())

    @property
    def uniform(self) -> bool:
        return self.spread <= self.envelope_factor


def stability_probe(f: SampledSignal, eps_list, g: Window, truncations, count: int = 20,
                    p=2, seed: int = _fixtures.DEFAULT_SEED, band: float = DEFAULT_NOISE_BAND,
                    envelope_factor: float = DEFAULT_ENVELOPE_FACTOR,
                    pathway: str = "multiplier", backend=None) -> StabilityReport:
    """Operator ratios on seeded band-limited random perturbations of size ``eps``.

    ``T`` is linear, so ``T(f + delta) - T f = T delta``; the probe applies
    ``T`` to ``delta`` directly to avoid cancelling against ``T f``.  ``f``
    only fixes the grid.
    """
    p = LpExponent.parse(p)
    truncs = tuple(TruncationPair.coerce(t) for t in truncations)
    band, _ = clamp_to_band(band, f.grid, "noise band")
    rng = np.random.default_rng(seed)
    shapes = []
    for _ in range(count):
        d = _fixtures.bandlimited_noise(f.grid, band, rng)
        shapes.append(d * (1.0 / lp_norm(d, p)))
    ratios = np.full((len(eps_list), count, len(truncs)), np.nan)
    skipped = []
    for e, eps in enumerate(eps_list):
        if eps == 0:
            skipped.append("eps=0 skipped: ratio is 0 by convention")
            continue
        for s, d in enumerate(shapes):
            delta = d * float(eps)
            dn = lp_norm(delta, p)
            for a, t in enumerate(truncs):
                Td = apply_truncated(delta, g, t, pathway, backend).signal
                ratios[e, s, a] = lp_norm(Td, p) / dn
    return StabilityReport(tuple(eps_list), truncs, ratios, seed, envelope_factor, tuple(skipped))


@dataclass(frozen=True)
class PointwiseReport:
    A_list: tuple
    max_errors: tuple

    @property
    def non_increasing_after_first(self) -> bool:
        return _non_increasing(self.max_errors[1:])

    def final_below(self, tol: float) -> bool:
        return self.max_errors[-1] < tol


def pointwise_decay_probe(f: SampledSignal, g: Window, A_list, pathway: str = "multiplier",
                          backend=None) -> PointwiseReport:
    """Grid-wide ``max |T_A f - 2 pi conj(g(x0)) f|`` for each ``A``.

    A full-grid maximum on smooth fixtures stands in for almost-everywhere
    convergence, which cannot be observed on finitely many points.
    """
    require_invertible(g)
    limit = f * (2 * math.pi * np.conj(g.g_at_anchor))
    errs = tuple(lp_norm(apply_truncated(f, g, A, pathway, backend).signal - limit, "inf")
                 for A in A_list)
    return PointwiseReport(tuple(float(a) for a in A_list), errs)
