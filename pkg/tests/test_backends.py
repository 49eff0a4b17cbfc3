import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

import stftinv
from stftinv import _backend, _pykernels
from stftinv.windows import make_window

GL_X, GL_W = np.polynomial.legendre.leggauss(8)
BOTH = pytest.mark.skipif(len(_backend.available()) < 2, reason="compiled kernels not built")


def _data(n, seed=1):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_backend_name_is_reported():
    assert stftinv.BACKEND in ("cython", "python")
    assert stftinv.BACKEND == _backend.available()[0]


def test_unknown_backend_is_rejected():
    with pytest.raises(ValueError):
        _backend.dft(np.ones(2), np.zeros(2), np.zeros(2), -1, backend="fortran")


def test_pure_python_switch_in_fresh_interpreter():
    env = dict(os.environ, STFTINV_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import stftinv; print(stftinv.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


# ---------------------------------------------------------------- reference values

def test_dft_matches_naive_sum(backend):
    x = np.linspace(-2, 3, 37)
    w = np.linspace(-5, 5, 23)
    a = _data(37)
    naive = np.array([np.sum(a * np.exp(-1j * x * wj)) for wj in w])
    assert np.max(np.abs(_backend.dft(a, x, w, -1, backend=backend) - naive)) < 1e-12


def test_dirichlet_values_continuous_through_origin():
    A = 3.0
    u = np.array([-2e-6, -1e-6, -5e-7, 0.0, 5e-7, 1e-6, 2e-6])
    exact = np.array([A / math.pi if v == 0 else math.sin(A * v) / (math.pi * v) for v in u])
    np.testing.assert_allclose(_pykernels.dirichlet_values(u, A), exact, rtol=1e-14)


@pytest.mark.parametrize("A1, A2", [(4.0, 4.0), (1.0, 7.0), (5.0, 2.0)])
@pytest.mark.parametrize("u", [0.0, 3e-7, -8e-7, 2e-6, 0.3, -2.5])
def test_truncated_exponential_integral_matches_quadrature(A1, A2, u):
    re, im = _pykernels.truncated_exponential_integral(np.array([u]), A1, A2)
    qre, _ = quad(lambda w: math.cos(u * w), -A1, A2, epsabs=1e-12)
    qim, _ = quad(lambda w: -math.sin(u * w), -A1, A2, epsabs=1e-12)
    assert abs(re[0] - qre) < 1e-11 and abs(im[0] - qim) < 1e-11


@given(st.floats(-0.5, 7.5))
def test_lagrange_weights_reproduce_degree_seven(t):
    w = _pykernels.lagrange_weights(np.array(t))
    nodes = np.arange(8.0)
    assert abs(np.sum(w) - 1.0) < 1e-11
    for deg in range(8):
        assert abs(np.dot(w, nodes ** deg) - t ** deg) <= 1e-9 * max(1.0, abs(t) ** deg) * 8 ** deg


def test_panel_integral_with_kinked_samples():
    # the stencil straddles the kink of |y|, so only low accuracy is expected
    ystart, dy, n = -3.0, 0.05, 121
    y = ystart + dy * np.arange(n)
    f = np.abs(y)
    cuts = np.array([-1.3, 0.0, 0.7])
    val = _pykernels.panel_integral(f, ystart, dy, cuts, lambda v: np.ones_like(v), GL_X, GL_W)
    assert abs(val - (1.3 ** 2 / 2 + 0.7 ** 2 / 2)) < 5e-3


def test_panel_integral_of_smooth_function_is_spectrally_accurate():
    ystart, dy, n = -4.0, 0.1, 81
    y = ystart + dy * np.arange(n)
    f = np.exp(-y ** 2)
    cuts = np.array([-1.234, 0.377, 2.05])
    val = _pykernels.panel_integral(f, ystart, dy, cuts, np.cos, GL_X, GL_W)
    exact, _ = quad(lambda v: math.exp(-v * v) * math.cos(v), -1.234, 2.05, epsabs=1e-14)
    assert abs(val - exact) < 1e-8


# ---------------------------------------------------------------- parity

@BOTH
@pytest.mark.parametrize("sign", [-1, 1])
def test_dft_parity(sign):
    x = np.linspace(-8, 8, 301)
    w = np.linspace(-20, 20, 211)
    a = _data(301)
    c = _backend.dft(a, x, w, sign, backend="cython")
    p = _backend.dft(a, x, w, sign, backend="python")
    assert np.max(np.abs(c - p)) <= 1e-12 * np.sum(np.abs(a))


@BOTH
@pytest.mark.parametrize("A", [0.5, 4.0, 30.0])
def test_dirichlet_parity(A):
    y = np.linspace(-6, 6, 257)
    x = np.concatenate([y[::3], [0.0, 1e-8, 2.5e-7]])
    a = _data(257, seed=2)
    c = _backend.dirichlet(a, y, x, A, backend="cython")
    p = _backend.dirichlet(a, y, x, A, backend="python")
    assert np.max(np.abs(c - p)) <= 1e-12 * np.sum(np.abs(a)) * A


@BOTH
@pytest.mark.parametrize("kind, sigma", [("gaussian", 1.0), ("hann", 2.0), ("triangular", 1.5)])
@pytest.mark.parametrize("A1, A2", [(4.0, 4.0), (1.0, 7.0)])
@pytest.mark.parametrize("x0", [0.0, 0.3])
def test_kernel_trapezoid_parity(kind, sigma, A1, A2, x0):
    g = make_window(kind, sigma, x0)
    y = np.linspace(-6, 6, 241)
    x = y[::2]
    a = _data(241, seed=3)
    c = _backend.kernel_trapezoid(a, y, x, g, A1, A2, backend="cython")
    p = _backend.kernel_trapezoid(a, y, x, g, A1, A2, backend="python")
    assert np.max(np.abs(c - p)) <= 1e-12 * np.sum(np.abs(a)) * (A1 + A2)


@BOTH
@pytest.mark.parametrize("kind, sigma", [("hann", 2.0), ("triangular", 1.5)])
@pytest.mark.parametrize("x0", [0.0, -0.4])
def test_kernel_panels_parity(kind, sigma, x0):
    g = make_window(kind, sigma, x0)
    n, ystart, dy = 161, -8.0, 0.1
    f = _data(n, seed=4)
    x = np.linspace(-7, 7, 57)
    c = _backend.kernel_panels(f, ystart, dy, x, g, 3.0, 5.0, GL_X, GL_W, backend="cython")
    p = _backend.kernel_panels(f, ystart, dy, x, g, 3.0, 5.0, GL_X, GL_W, backend="python")
    assert np.max(np.abs(c - p)) <= 1e-11 * np.max(np.abs(p))


def test_custom_window_falls_back_to_python_kernels(backend):
    g = make_window("custom", 1.0, g=lambda x: np.exp(-0.5 * np.asarray(x) ** 2),
                    g_hat=lambda w: math.sqrt(2 * math.pi) * np.exp(-0.5 * np.asarray(w) ** 2))
    ref = make_window("gaussian", 1.0)
    y = np.linspace(-5, 5, 101)
    a = _data(101, seed=5)
    got = _backend.kernel_trapezoid(a, y, y, g, 2.0, 3.0, backend=backend)
    want = _backend.kernel_trapezoid(a, y, y, ref, 2.0, 3.0, backend="python")
    assert np.max(np.abs(got - want)) < 1e-12 * np.sum(np.abs(a))
