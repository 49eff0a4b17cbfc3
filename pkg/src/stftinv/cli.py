"""Command-line interface: ``stftinv {stft,invert,sweep,audio}``.

Every run is described by an INI config file::

    [grid]      half_width, num_points
    [window]    kind, sigma, x0
    [signal]    fixture | input (CSV with header x,re,im)
    [run]       pathway, A | A1 + A2, p, A_list, normalize, extended, seed
    [stft]      time_half_width, time_points, freq_half_width, freq_points
    [audio]     input, output, A (number or "max")

Relative paths are resolved against the config file's directory.  Flags
``--seed``, ``--pathway`` and ``--normalize`` override the config.

Exit codes: 0 success, 2 config error, 3 numeric validation failure,
4 degenerate window anchor, 5 unsupported audio.
"""
from __future__ import annotations

import argparse
import configparser
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, io
from .errors import ConfigError, NumericValidationError, StftInvError
from .fixtures import DEFAULT_SEED, make_fixture
from .fourier import band_limit
from .grid import (DEFAULT_HALF_WIDTH, DEFAULT_NUM_POINTS, LpExponent, SampledSignal, UniformGrid,
                   lp_norm)
from .inversion import (PATHWAYS, TruncationPair, apply_truncated, filter_bank_reconstruct,
                        invert_double_integral, normalize)
from .lab import SweepSpec, run_sweep
from .stft import forward_stft
from .windows import make_window, require_invertible

#: Window scale of the audio demo when none is configured, in seconds
#: (half-support of the default hann window, so a 20 ms span).
AUDIO_WINDOW_SCALE = 0.01
#: Default STFT output size of the ``stft`` command (odd, so t = 0 and w = 0 are samples).
STFT_POINTS = 129

_KNOWN_KEYS = {
    "grid": {"half_width", "num_points"},
    "window": {"kind", "sigma", "x0"},
    "signal": {"fixture", "input"},
    "run": {"pathway", "a", "a1", "a2", "p", "a_list", "normalize", "extended", "seed"},
    "stft": {"time_half_width", "time_points", "freq_half_width", "freq_points"},
    "audio": {"input", "output", "a"},
}

CONFIG_WINDOWS = ("gaussian", "hann", "triangular")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def parse_bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


@dataclass
class RunConfig:
    """Parsed and validated run configuration."""

    sections: dict = field(default_factory=dict)
    base: Path = Path(".")
    seed: int = DEFAULT_SEED

    @classmethod
    def load(cls, path) -> "RunConfig":
        if path is None:
            return cls()
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file {p} does not exist")
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read(p)
        except configparser.Error as exc:
            raise ConfigError(f"{p}: {' '.join(str(exc).split())}") from None
        sections = {}
        for name in parser.sections():
            if name not in _KNOWN_KEYS:
                raise ConfigError(f"{p}: unknown section [{name}]")
            extra = set(parser[name]) - _KNOWN_KEYS[name]
            if extra:
                raise ConfigError(f"{p}: unknown key(s) {sorted(extra)} in [{name}]")
            sections[name] = dict(parser[name])
        cfg = cls(sections, p.resolve().parent)
        cfg.seed = cfg.get_int("run", "seed", DEFAULT_SEED)
        return cfg

    # -- typed getters
    def get(self, section, key, default=None):
        return self.sections.get(section, {}).get(key, default)

    def get_float(self, section, key, default=None):
        v = self.get(section, key)
        if v is None:
            return default
        try:
            return float(v)
        except ValueError:
            raise ConfigError(f"[{section}] {key} = {v!r} is not a number") from None

    def get_int(self, section, key, default=None):
        v = self.get(section, key)
        if v is None:
            return default
        try:
            return int(v, 0)
        except ValueError:
            raise ConfigError(f"[{section}] {key} = {v!r} is not an integer") from None

    def get_list(self, section, key, default=None):
        v = self.get(section, key)
        if v is None:
            return default
        items = [s.strip() for s in v.replace(";", ",").split(",")]
        return [s for s in items if s]

    def path(self, section, key, must_exist=True):
        v = self.get(section, key)
        if v is None:
            return None
        p = Path(v)
        if not p.is_absolute():
            p = self.base / p
        if must_exist and not p.is_file():
            raise ConfigError(f"[{section}] {key}: file {p} does not exist")
        return p

    # -- domain objects
    def grid(self) -> UniformGrid:
        return UniformGrid(self.get_float("grid", "half_width", DEFAULT_HALF_WIDTH),
                           self.get_int("grid", "num_points", DEFAULT_NUM_POINTS))

    def window(self, default_kind="gaussian", default_sigma=1.0):
        kind = self.get("window", "kind", default_kind)
        if kind not in CONFIG_WINDOWS:
            raise ConfigError(f"[window] kind = {kind!r}; expected one of {CONFIG_WINDOWS}")
        return make_window(kind,
                           self.get_float("window", "sigma", default_sigma),
                           self.get_float("window", "x0", 0.0))

    def signal(self) -> tuple[SampledSignal, str]:
        src = self.path("signal", "input")
        if src is not None:
            if self.get("signal", "fixture") is not None:
                raise ConfigError("[signal] takes either fixture or input, not both")
            return io.read_signal_csv(src), str(src)
        name = self.get("signal", "fixture", "gaussian")
        return make_fixture(name, self.grid(), self.seed), name

    def truncation(self) -> TruncationPair:
        A = self.get_float("run", "a")
        A1, A2 = self.get_float("run", "a1"), self.get_float("run", "a2")
        if A is not None and (A1 is not None or A2 is not None):
            raise ConfigError("[run] takes either A or A1/A2, not both")
        if A1 is not None or A2 is not None:
            if A1 is None or A2 is None:
                raise ConfigError("[run] needs both A1 and A2")
            return TruncationPair(A1, A2)
        return TruncationPair.symmetric(8.0 if A is None else A)


def _manifest(command: str, cfg: RunConfig, outputs: dict, **extra) -> dict:
    return {"command": command, "version": __version__, "seed": cfg.seed,
            "config": cfg.sections, "outputs": outputs, **extra}


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ------------------------------------------------------------------ commands

def cmd_stft(args, cfg: RunConfig) -> int:
    f, source = cfg.signal()
    g = cfg.window()
    L, omega = f.grid.half_width, band_limit(f.grid)
    tg = UniformGrid(cfg.get_float("stft", "time_half_width", L),
                     cfg.get_int("stft", "time_points", STFT_POINTS), f.grid.center)
    fg = UniformGrid(cfg.get_float("stft", "freq_half_width", omega),
                     cfg.get_int("stft", "freq_points", STFT_POINTS))
    S = forward_stft(f, g, tg, fg)
    out = _out_dir(args)
    io.write_stft_csv(out / "stft.csv", S)
    io.write_json(out / "manifest.json", _manifest(
        "stft", cfg, {"stft": "stft.csv"}, signal=source, window=g.spec(),
        time_grid=tg.describe(), freq_grid=fg.describe()))
    return 0


def cmd_invert(args, cfg: RunConfig) -> int:
    pathway = args.pathway or cfg.get("run", "pathway", "multiplier")
    if pathway not in PATHWAYS + ("double",):
        raise ConfigError(f"unknown pathway {pathway!r}; expected one of {PATHWAYS + ('double',)}")
    norm = parse_bool(args.normalize if args.normalize is not None else cfg.get("run", "normalize", "true"))
    f, source = cfg.signal()
    g = cfg.window()
    if pathway == "double":
        S = forward_stft(f, g)
        rec = invert_double_integral(S, g, f.grid)
        target = f
    else:
        if norm:
            require_invertible(g)
        trunc = cfg.truncation()
        if pathway == "modulation" and not trunc.is_symmetric:
            raise ConfigError("the modulation pathway needs A1 == A2")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rec = apply_truncated(f, g, trunc, pathway)
        if norm:
            rec = normalize(rec)
            target = f
        else:
            target = f * (2 * math.pi * np.conj(g.g_at_anchor))
    tn = lp_norm(target, 2)
    err = lp_norm(rec.signal - target, 2)
    meta = rec.metadata()
    meta.update(normalized=norm if pathway != "double" else True, signal=source,
                rel_l2_error_vs_input=err / tn if tn > 0 else err, grid=f.grid.describe())
    out = _out_dir(args)
    io.write_signal_csv(out / "reconstruction.csv", rec.signal)
    io.write_json(out / "reconstruction.json", meta)
    io.write_json(out / "manifest.json", _manifest(
        "invert", cfg, {"reconstruction": "reconstruction.csv", "metadata": "reconstruction.json"}))
    return 0


def cmd_sweep(args, cfg: RunConfig) -> int:
    pathway = args.pathway or cfg.get("run", "pathway", "multiplier")
    extended = parse_bool(cfg.get("run", "extended", "false"))
    A_text = cfg.get_list("run", "a_list", ["1", "2", "4", "8", "16"])
    try:
        A_list = tuple(float(a) for a in A_text)
    except ValueError:
        raise ConfigError(f"[run] A_list = {cfg.get('run', 'a_list')!r} is not a list of numbers") from None
    p_list = tuple(cfg.get_list("run", "p", ["2"]))
    try:
        p_list = tuple(LpExponent.parse(p, extended) for p in p_list)
    except NumericValidationError as exc:
        raise ConfigError(f"[run] p: {exc}") from None
    if cfg.get("signal", "input") is not None:
        raise ConfigError("sweep runs on named fixtures; [signal] input is not supported")
    g = cfg.window()
    spec = SweepSpec(fixture=cfg.get("signal", "fixture", "gaussian"),
                     window_kind=g.kind, window_scale=g.scale, x0=g.x0, p_list=p_list, A_list=A_list,
                     pathway=pathway, grid=cfg.grid(), extended=extended, seed=cfg.seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = run_sweep(spec)
    out = _out_dir(args)
    io.write_report_csv(out / "report.csv", report)
    io.write_json(out / "manifest.json", _manifest(
        "sweep", cfg, {"report": "report.csv"}, run=report.manifest,
        warnings=list(report.warnings)))
    return 0


def snr_db(reference: np.ndarray, estimate: np.ndarray) -> float:
    """``20 log10(||ref|| / ||ref - est||)``; ``+inf`` for silence or an exact match."""
    num = float(np.linalg.norm(reference))
    den = float(np.linalg.norm(np.asarray(reference) - np.asarray(estimate)))
    if num == 0.0 or den == 0.0:
        return math.inf
    return 20.0 * math.log10(num / den)


def window_reach(g) -> float:
    """Distance beyond which the window is zero (or below ``1e-14`` for the gaussian)."""
    if g.support_hint is not None:
        return max(abs(g.support_hint[0]), abs(g.support_hint[1]))
    return 8.0 * g.scale


def audio_roundtrip(samples: np.ndarray, rate: int, g, A=None) -> dict:
    """Reconstruct PCM samples with the single-integral inversion; returns samples and SNRs.

    The recording is embedded in silence one window reach wide on each
    side, so the signal on the grid is the recording extended by zero.
    Without the margin the two ends of the recording would be treated as
    neighbours by the periodic FFT quadrature.
    """
    n = len(samples)
    pad = int(math.ceil(window_reach(g) * rate)) + 1
    grid = UniformGrid.from_spacing(-pad / rate, 1.0 / rate, n + 2 * pad)
    padded = np.zeros(n + 2 * pad)
    padded[pad:pad + n] = np.asarray(samples, dtype=float) / 32768.0
    f = SampledSignal(grid, padded)
    if A is None:
        rec = filter_bank_reconstruct(f, g)
    else:
        require_invertible(g)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rec = normalize(apply_truncated(f, g, A, "multiplier"))
    y = rec.values.real[pad:pad + n] * 32768.0
    q, clipped = io.quantize(y)
    ref = np.asarray(samples, dtype=float)
    return {"samples": q, "clipped": clipped, "snr_db": snr_db(ref, y),
            "snr_quantized_db": snr_db(ref, q.astype(float)), "reconstruction": rec,
            "padding": pad}


def cmd_audio(args, cfg: RunConfig) -> int:
    src = Path(args.input) if args.input else cfg.path("audio", "input")
    if src is None:
        raise ConfigError("audio needs an input WAV ([audio] input or --input)")
    if not src.is_file():
        raise ConfigError(f"input file {src} does not exist")
    out = _out_dir(args)
    dst = Path(args.output) if args.output else (cfg.path("audio", "output", must_exist=False)
                                                 or out / "roundtrip.wav")
    rate, samples = io.read_wav(src)
    g = cfg.window(default_kind="hann", default_sigma=AUDIO_WINDOW_SCALE)
    A_text = str(cfg.get("audio", "a", "max")).strip().lower()
    A = None if A_text == "max" else cfg.get_float("audio", "a")
    res = audio_roundtrip(samples, rate, g, A)
    io.write_wav(dst, rate, res["samples"])
    report = {"input": str(src), "output": str(dst), "sample_rate": rate,
              "num_samples": int(len(samples)), "window": g.spec(),
              "A": "max" if A is None else A, "snr_db": res["snr_db"],
              "snr_quantized_db": res["snr_quantized_db"], "clipped_samples": res["clipped"],
              "rounding": "half-to-even", "padding_samples": res["padding"],
              "tail_estimate": res["reconstruction"].tail_estimate}
    io.write_json(out / "audio.json", report)
    io.write_json(out / "manifest.json", _manifest("audio", cfg, {"audio": str(dst), "report": "audio.json"}))
    snr = report["snr_db"]
    print(f"SNR = {'+inf' if math.isinf(snr) else f'{snr:.2f}'} dB")
    return 0


COMMANDS = {"stft": cmd_stft, "invert": cmd_invert, "sweep": cmd_sweep, "audio": cmd_audio}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stftinv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {"stft": "compute a windowed Fourier transform and write it as CSV",
             "invert": "reconstruct a signal with one of the inversion pathways",
             "sweep": "run a convergence sweep over truncation limits",
             "audio": "single-integral round trip of a 16-bit mono WAV file"}
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--config", help="INI run configuration")
        sp.add_argument("--out", default=".", help="output directory (default: current)")
        sp.add_argument("--seed", type=int, help="seed for random fixtures")
        sp.add_argument("--pathway", choices=PATHWAYS + ("double",), help="inversion pathway")
        sp.add_argument("--normalize", help="divide by 2 pi conj(g(x0)) (true/false)")
        if name == "audio":
            sp.add_argument("--input", help="input WAV (overrides [audio] input)")
            sp.add_argument("--output", help="output WAV (overrides [audio] output)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        if args.seed is not None:
            cfg.seed = args.seed
        return COMMANDS[args.command](args, cfg)
    except StftInvError as exc:
        msg = " ".join(str(exc).split())
        print(f"stftinv: error: {msg}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
