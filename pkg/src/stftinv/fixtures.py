"""Test signals: smooth, compactly supported, oscillatory, random and audio.

All fixtures except the audio chirp live on symmetric grids and are
negligible (below ``1e-8``) at the edges of the default domain.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError
from .fourier import forward_ft, inverse_ft
from .grid import SampledSignal, UniformGrid, default_grid

#: Default seed of every random fixture.
DEFAULT_SEED = 0x5EED
#: Band of the ``noise`` fixture.
NOISE_BAND = 16.0


def gaussian(x):
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2)


def wide_gaussian(x):
    """``exp(-x^2/8)``: spectrum ``~exp(-2 w^2)`` is negligible beyond ``|w| = 4``."""
    return np.exp(-0.125 * np.asarray(x, dtype=float) ** 2)


def bump(x, radius: float = 3.0):
    """Smooth compactly supported bump ``exp(1 - 1/(1 - (x/r)^2))`` on ``|x| < r``."""
    z = (np.asarray(x, dtype=float) / radius) ** 2
    out = np.zeros_like(z)
    inside = z < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - z[inside]))
    return out


def chirp(x):
    """Gaussian-enveloped linear chirp, instantaneous frequency ``2 + x/2``."""
    x = np.asarray(x, dtype=float)
    return np.exp(-0.125 * x ** 2) * np.cos(2.0 * x + 0.25 * x ** 2)


def zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


FIXTURES = {
    "zero": zero,
    "gaussian": gaussian,
    "wide_gaussian": wide_gaussian,
    "bump": bump,
    "chirp": chirp,
}


def make_fixture(name: str, grid: UniformGrid | None = None, seed: int = DEFAULT_SEED) -> SampledSignal:
    """Sample a named fixture on ``grid`` (default grid if omitted).

    ``'noise'`` is seeded band-limited noise with band ``16``; every other
    name refers to :data:`FIXTURES`.
    """
    grid = default_grid() if grid is None else grid
    if name == "noise":
        return bandlimited_noise(grid, NOISE_BAND, np.random.default_rng(seed))
    try:
        fun = FIXTURES[name]
    except KeyError:
        names = sorted(FIXTURES) + ["noise"]
        raise ConfigError(f"unknown fixture {name!r}; expected one of {names}") from None
    return SampledSignal.from_function(grid, fun)


def bandlimited_noise(grid: UniformGrid, band: float, rng: np.random.Generator) -> SampledSignal:
    """Real white noise low-passed to ``|w| <= band`` by a sharp spectral mask."""
    white = SampledSignal(grid, rng.standard_normal(grid.num_points))
    F = forward_ft(white)
    F = F.with_values(np.where(np.abs(F.grid.points) <= band, F.values, 0.0))
    return SampledSignal(grid, inverse_ft(F, grid).values.real)


def audio_chirp(sample_rate: int = 8000, duration: float = 1.0, f_start: float = 100.0,
                f_stop: float = 1000.0, amplitude: float = 0.5) -> np.ndarray:
    """Linear sine sweep as 16-bit PCM samples at ``amplitude`` of full scale."""
    n = int(round(duration * sample_rate))
    t = np.arange(n) / sample_rate
    rate = (f_stop - f_start) / (2.0 * duration)
    wave = amplitude * np.sin(2 * math.pi * (f_start * t + rate * t ** 2))
    return np.rint(wave * 32767).astype(np.int16)
