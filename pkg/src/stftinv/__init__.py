"""Windowed Fourier transform and its truncated single-integral inversion.

Quick start::

    >>> from stftinv import default_grid, make_fixture, make_window, filter_bank_reconstruct
    >>> f = make_fixture("gaussian", default_grid())
    >>> rec = filter_bank_reconstruct(f, make_window("gaussian"))
    >>> float(abs(rec.values - f.values).max()) < 1e-10
    True
"""
from ._backend import NAME as BACKEND, available as available_backends
from .errors import (BandClampWarning, ConfigError, DegenerateAnchorError, NumericValidationError,
                     StftInvError, UnsupportedMediaError)
from .fixtures import bandlimited_noise, make_fixture
from .fourier import (SpectrumSignal, dirichlet_partial_sum, forward_ft, frequency_grid,
                      inverse_ft, modulate)
from .grid import (LpExponent, SampledSignal, UniformGrid, default_grid, lp_norm, quadrature,
                   resample_to)
from .inversion import (MultiplierProfile, Reconstruction, TruncationPair, filter_bank_reconstruct,
                        invert_double_integral, invert_kernel, invert_modulation,
                        invert_multiplier, kernel_eval, multiplier_eval, tail_bound)
from .lab import (ErrorReport, SweepSpec, maximal_function_probe, pointwise_decay_probe,
                  run_sweep, stability_probe)
from .stft import StftMatrix, check_fourier_domain_identity, forward_stft, stft_at
from .windows import Window, make_window

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "available_backends",
    "BandClampWarning", "ConfigError", "DegenerateAnchorError", "NumericValidationError",
    "StftInvError", "UnsupportedMediaError",
    "bandlimited_noise", "make_fixture",
    "SpectrumSignal", "dirichlet_partial_sum", "forward_ft", "frequency_grid", "inverse_ft",
    "modulate",
    "LpExponent", "SampledSignal", "UniformGrid", "default_grid", "lp_norm", "quadrature",
    "resample_to",
    "MultiplierProfile", "Reconstruction", "TruncationPair", "filter_bank_reconstruct",
    "invert_double_integral", "invert_kernel", "invert_modulation", "invert_multiplier",
    "kernel_eval", "multiplier_eval", "tail_bound",
    "ErrorReport", "SweepSpec", "maximal_function_probe", "pointwise_decay_probe", "run_sweep",
    "stability_probe",
    "StftMatrix", "check_fourier_domain_identity", "forward_stft", "stft_at",
    "Window", "make_window",
]
