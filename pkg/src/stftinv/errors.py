"""Exception types shared across the package.

Each class maps onto one CLI exit code so that scripts can rely on a stable
contract (see :mod:`stftinv.cli`).
"""


class StftInvError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ConfigError(StftInvError, ValueError):
    """A run configuration is malformed or references missing inputs."""

    exit_code = 2


class NumericValidationError(StftInvError, ValueError):
    """An input violates a numeric precondition (non-finite samples, bad p, ...)."""

    exit_code = 3


class DegenerateAnchorError(NumericValidationError):
    """The window vanishes (numerically) at its anchor, so inversion is impossible."""

    exit_code = 4


class UnsupportedMediaError(StftInvError, ValueError):
    """Audio input is not 16-bit PCM mono at a supported sample rate."""

    exit_code = 5


class BandClampWarning(UserWarning):
    """A truncation limit exceeded the grid's representable band and was clamped."""
