"""CSV, JSON and WAV readers and writers.

CSV numbers are written with 17 significant digits so every finite double
survives a write/read cycle bit for bit.  JSON sidecars encode non-finite
floats as the strings ``"+inf"``, ``"-inf"`` and ``"nan"``.
"""
from __future__ import annotations

import csv
import json
import math
import wave
from pathlib import Path

import numpy as np

from .errors import ConfigError, NumericValidationError, UnsupportedMediaError
from .grid import SampledSignal, UniformGrid

MIN_SAMPLE_RATE = 8000
MAX_SAMPLE_RATE = 48000
_UNIFORM_RTOL = 1e-9


def fmt(x) -> str:
    return "%.17g" % x


def _check_header(header, expected, path):
    if header is None or [h.strip() for h in header] != list(expected):
        raise ConfigError(f"{path}: expected CSV header {','.join(expected)}, got {header}")


def write_signal_csv(path, s: SampledSignal, axis: str = "x") -> None:
    """Write ``axis,re,im`` rows, one per grid point."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([axis, "re", "im"])
        for x, v in zip(s.grid.points, s.values):
            w.writerow([fmt(x), fmt(v.real), fmt(v.imag)])


def grid_from_points(x: np.ndarray) -> UniformGrid:
    """Recover the uniform grid behind a column of sample positions."""
    if len(x) < 2:
        raise NumericValidationError("a signal needs at least 2 samples")
    if not np.all(np.isfinite(x)):
        raise NumericValidationError("sample positions must be finite")
    n = len(x)
    grid = UniformGrid.from_spacing(float(x[0]), (float(x[-1]) - float(x[0])) / (n - 1), n)
    scale = max(np.max(np.abs(x)), grid.spacing)
    if np.max(np.abs(grid.points - x)) > _UNIFORM_RTOL * scale:
        raise NumericValidationError("sample positions are not uniformly spaced")
    return grid


def read_signal_csv(path, axis: str = "x") -> SampledSignal:
    """Read a signal written by :func:`write_signal_csv`."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"input file {p} does not exist")
    with open(p, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ConfigError(f"{p}: empty CSV file")
    _check_header(rows[0], (axis, "re", "im"), p)
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
    except ValueError as exc:
        raise NumericValidationError(f"{p}: {exc}") from None
    if data.ndim != 2 or data.shape[1] != 3:
        raise ConfigError(f"{p}: every row needs 3 columns")
    return SampledSignal(grid_from_points(data[:, 0]), data[:, 1] + 1j * data[:, 2])


def write_stft_csv(path, S) -> None:
    """Write ``t,omega,re,im`` rows, row-major by ``t``."""
    t, w = S.time_grid.points, S.freq_grid.points
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["t", "omega", "re", "im"])
        for i, ti in enumerate(t):
            ts = fmt(ti)
            row = S.values[i]
            out.writerows([ts, fmt(wj), fmt(v.real), fmt(v.imag)] for wj, v in zip(w, row))


def write_report_csv(path, report) -> None:
    from .lab import REPORT_COLUMNS

    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(REPORT_COLUMNS)
        for r in report.records:
            out.writerow([c if isinstance(c, str) else fmt(c) for c in r.row()])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "+inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, complex):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    return obj


def write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ------------------------------------------------------------------ WAV

def read_wav(path) -> tuple[int, np.ndarray]:
    """Read 16-bit PCM mono audio; returns ``(sample_rate, int16 samples)``."""
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"input file {p} does not exist")
    try:
        with wave.open(str(p), "rb") as fh:
            channels, width, rate = fh.getnchannels(), fh.getsampwidth(), fh.getframerate()
            comp = fh.getcomptype()
            frames = fh.readframes(fh.getnframes())
    except (wave.Error, EOFError) as exc:
        raise UnsupportedMediaError(f"{p}: not a readable PCM WAV file ({exc})") from None
    if channels != 1:
        raise UnsupportedMediaError(f"{p}: {channels} channels; only mono is supported")
    if width != 2 or comp != "NONE":
        raise UnsupportedMediaError(f"{p}: only 16-bit PCM is supported (sample width {width} bytes)")
    if not MIN_SAMPLE_RATE <= rate <= MAX_SAMPLE_RATE:
        raise UnsupportedMediaError(
            f"{p}: sample rate {rate} Hz outside {MIN_SAMPLE_RATE}-{MAX_SAMPLE_RATE} Hz")
    data = np.frombuffer(frames, dtype="<i2").astype(np.int16)
    if len(data) < 2:
        raise UnsupportedMediaError(f"{p}: fewer than 2 samples")
    return rate, data


def write_wav(path, rate: int, samples: np.ndarray) -> None:
    with wave.open(str(path), "wb") as fh:
        fh.setnchannels(1)
        fh.setsampwidth(2)
        fh.setframerate(int(rate))
        fh.writeframes(np.asarray(samples, dtype="<i2").tobytes())


def quantize(x: np.ndarray) -> tuple[np.ndarray, int]:
    """Round to int16 (half to even) with clipping; returns samples and the clip count."""
    r = np.rint(np.asarray(x, dtype=float))
    clipped = int(np.count_nonzero((r > 32767) | (r < -32768)))
    return np.clip(r, -32768, 32767).astype(np.int16), clipped
