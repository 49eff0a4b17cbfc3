"""Selects the compiled kernels when available, else the NumPy fallback.

Set ``STFTINV_PURE_PYTHON=1`` before import to force the fallback.
"""
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("STFTINV_PURE_PYTHON"):
        raise ImportError("pure-Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

NAME = "cython" if _ckernels is not None else "python"

# kind codes understood by the compiled kernels
_KIND_CODES = {"gaussian": 0, "hann": 1, "triangular": 2}


def available():
    """Names of the kernel backends importable in this environment."""
    return ["cython", "python"] if _ckernels is not None else ["python"]


def _pick(backend):
    backend = backend or NAME
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        return _ckernels
    if backend == "python":
        return _pykernels
    raise ValueError(f"unknown backend {backend!r}")


def _f64(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def _c128(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def dft(a, x, omega, sign, backend=None):
    return _pick(backend).dft(_c128(a), _f64(x), _f64(omega), int(sign))


def dirichlet(a, y, x, A, backend=None):
    return _pick(backend).dirichlet(_c128(a), _f64(y), _f64(x), float(A))


def kernel_trapezoid(a, y, x, window, A1, A2, backend=None):
    impl = _pick(backend)
    code = _KIND_CODES.get(window.kind)
    if impl is _ckernels and code is not None:
        return impl.kernel_trapezoid(_c128(a), _f64(y), _f64(x), code, float(window.scale),
                                     float(window.x0), float(A1), float(A2))
    return _pykernels.kernel_trapezoid(_c128(a), _f64(y), _f64(x), window.eval_g,
                                       float(window.x0), float(A1), float(A2))


def kernel_panels(f, ystart, dy, x, window, A1, A2, gl_x, gl_w, backend=None):
    impl = _pick(backend)
    code = _KIND_CODES.get(window.kind)
    brk = _f64(window.breakpoints)
    if impl is _ckernels and code is not None:
        return impl.kernel_panels(_c128(f), float(ystart), float(dy), _f64(x), code,
                                  float(window.scale), float(window.x0), float(A1), float(A2),
                                  brk, _f64(gl_x), _f64(gl_w))
    return _pykernels.kernel_panels(_c128(f), float(ystart), float(dy), _f64(x), window.eval_g,
                                    float(window.x0), float(A1), float(A2), brk,
                                    _f64(gl_x), _f64(gl_w))
