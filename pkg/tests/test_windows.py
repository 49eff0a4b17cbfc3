import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

import oracle_values as ov
from stftinv.errors import DegenerateAnchorError, NumericValidationError
from stftinv.windows import ANCHOR_THRESHOLD, make_window, require_invertible

KINDS = [("gaussian", 1.0), ("gaussian", 0.4), ("hann", 1.0), ("hann", 2.5), ("triangular", 1.0),
         ("triangular", 0.7)]


def _numeric_ft(g, w, lo, hi, points=None):
    re, _ = quad(lambda x: float(g(np.array([x]))[0].real) * math.cos(x * w), lo, hi,
                 points=points, limit=400, epsabs=1e-13)
    im, _ = quad(lambda x: -float(g(np.array([x]))[0].real) * math.sin(x * w), lo, hi,
                 points=points, limit=400, epsabs=1e-13)
    return re + 1j * im


@pytest.mark.parametrize("kind, s", KINDS)
@pytest.mark.parametrize("w", [0.0, 0.7, -2.3, 5.0, math.pi])
def test_closed_form_transform_matches_quadrature(kind, s, w):
    g = make_window(kind, s)
    reach = 12 * s if kind == "gaussian" else s
    pts = [0.0] if kind == "triangular" else None
    got = complex(np.asarray(g.eval_g_hat(np.array([w])))[0])
    assert abs(got - _numeric_ft(g.eval_g, w, -reach, reach, pts)) < 1e-10


def test_hann_transform_removable_points():
    # a = s w = pi is a removable singularity of the closed form
    g = make_window("hann", 1.0)
    vals = g.eval_g_hat(np.array([math.pi - 1e-9, math.pi, math.pi + 1e-9]))
    assert np.all(np.isfinite(vals))
    assert abs(vals[1] - 0.5) < 1e-12
    assert np.max(np.abs(np.diff(vals))) < 1e-8


def test_hann_l1_norm_matches_oracle():
    assert abs(make_window("hann", 1.0).l1_norm_g_hat - ov.HANN_GHAT_L1) < 1e-9


@pytest.mark.parametrize("kind", ["gaussian", "triangular"])
@pytest.mark.parametrize("s", [0.5, 1.0, 3.0])
def test_l1_norm_is_2pi_for_positive_transforms(kind, s):
    # non-negative g_hat: ||g_hat||_1 = int g_hat = 2 pi g(0)
    assert make_window(kind, s).l1_norm_g_hat == pytest.approx(2 * math.pi, rel=1e-15)


@pytest.mark.parametrize("kind, s", KINDS)
def test_l2_norm_matches_quadrature(kind, s):
    g = make_window(kind, s)
    reach = 12 * s if kind == "gaussian" else s
    val, _ = quad(lambda x: float(g.eval_g(np.array([x]))[0]) ** 2, -reach, reach,
                  points=[0.0], epsabs=1e-14)
    assert g.l2_norm_sq == pytest.approx(val, rel=1e-10)


def test_gaussian_l2_matches_oracle():
    assert make_window("gaussian", 1.0).l2_norm_sq == pytest.approx(ov.GAUSS_L2_SQ, rel=1e-15)


@pytest.mark.parametrize("kind, s", KINDS)
def test_tail_mass_at_zero_is_l1_norm(kind, s):
    g = make_window(kind, s)
    assert g.g_hat_tail_mass(0.0) == pytest.approx(g.l1_norm_g_hat, rel=1e-9)
    assert g.g_hat_tail_mass(-3.0) == g.g_hat_tail_mass(0.0)


@pytest.mark.parametrize("kind, s", KINDS)
@pytest.mark.parametrize("W", [0.5, 2.0, 7.0])
def test_tail_mass_matches_quadrature(kind, s, W):
    g = make_window(kind, s)
    f = lambda w: abs(complex(np.asarray(g.eval_g_hat(np.array([w])))[0]))  # noqa: E731
    if kind == "gaussian":
        body, _ = quad(f, W, math.inf, epsabs=1e-14)
    else:
        # oscillatory algebraic tails: integrate period by period out to a far cut
        edges = np.concatenate(([W], np.arange(math.ceil(W * s / math.pi) + 1, 4001) * math.pi / s))
        edges = edges[edges >= W]
        body = sum(quad(f, a, b, epsabs=1e-15)[0] for a, b in zip(edges[:-1], edges[1:]))
        far = edges[-1] * s
        body += math.pi / far ** 2 if kind == "hann" else 2.0 / far
    assert g.g_hat_tail_mass(W) == pytest.approx(2 * body, rel=1e-6)


@pytest.mark.parametrize("kind, s", KINDS)
def test_tail_mass_non_increasing(kind, s):
    g = make_window(kind, s)
    W = np.linspace(0, 40, 81)
    t = np.array([g.g_hat_tail_mass(v) for v in W])
    assert np.all(np.diff(t) <= 1e-12 * t[0])


@pytest.mark.parametrize("kind, s", KINDS)
def test_mass_radius_bounds_tail(kind, s):
    g = make_window(kind, s)
    R = g.g_hat_mass_radius(1e-6)
    assert g.g_hat_tail_mass(R) <= 1e-6 * g.l1_norm_g_hat
    assert g.g_hat_tail_mass(0.98 * R) > 1e-6 * g.l1_norm_g_hat


# ---------------------------------------------------------------- anchors

def test_anchor_value_and_invertibility():
    g = make_window("gaussian", 1.0, x0=1.5)
    assert g.g_at_anchor == pytest.approx(math.exp(-1.125))
    assert g.invertible
    require_invertible(g)


@pytest.mark.parametrize("kind, x0", [("hann", 1.0), ("hann", 3.0), ("triangular", 1.0),
                                      ("gaussian", 40.0)])
def test_degenerate_anchor(kind, x0):
    g = make_window(kind, 1.0, x0=x0)
    assert abs(g.g_at_anchor) < ANCHOR_THRESHOLD
    assert not g.invertible
    with pytest.raises(DegenerateAnchorError):
        require_invertible(g)


def test_with_anchor_recomputes_anchor_value():
    g = make_window("hann", 2.0).with_anchor(1.0)
    assert g.x0 == 1.0
    assert g.g_at_anchor == pytest.approx(0.5)
    assert g.l1_norm_g_hat == make_window("hann", 2.0).l1_norm_g_hat


# ---------------------------------------------------------------- validation

@pytest.mark.parametrize("kwargs", [dict(kind="kaiser"), dict(sigma=0.0), dict(sigma=-1.0),
                                    dict(sigma=math.inf), dict(x0=math.nan)])
def test_invalid_windows_rejected(kwargs):
    with pytest.raises(NumericValidationError):
        make_window(**kwargs)


def test_custom_window_requires_both_evaluators():
    with pytest.raises(NumericValidationError):
        make_window("custom", 1.0, g=lambda x: np.exp(-np.asarray(x) ** 2))


def test_custom_window_rejects_discontinuity():
    step = lambda x: (np.abs(np.asarray(x)) <= 1).astype(float)  # noqa: E731
    box_hat = lambda w: 2 * np.sinc(np.asarray(w) / np.pi)  # noqa: E731
    with pytest.raises(NumericValidationError):
        make_window("custom", 1.0, g=step, g_hat=box_hat, support=(-1, 1))


def test_custom_tabulated_transform():
    w = np.linspace(-40, 40, 8001)
    table = (w, math.sqrt(2 * math.pi) * np.exp(-0.5 * w ** 2))
    g = make_window("custom", 1.0, g=lambda x: np.exp(-0.5 * np.asarray(x) ** 2), g_hat=table)
    assert g.g_hat_provenance == "table"
    assert g.l1_norm_g_hat == pytest.approx(2 * math.pi, rel=1e-6)
    assert g.eval_g_hat(np.array([0.3]))[0] == pytest.approx(math.sqrt(2 * math.pi) * math.exp(-0.045),
                                                             rel=1e-9)
    assert g.eval_g_hat(np.array([50.0]))[0] == 0.0


@given(st.floats(-30, 30), st.floats(0.2, 5.0))
def test_gaussian_transform_is_real_positive_and_bounded(w, s):
    g = make_window("gaussian", s)
    v = float(np.asarray(g.eval_g_hat(np.array([w])))[0])
    assert 0.0 <= v <= s * math.sqrt(2 * math.pi) * (1 + 1e-15)


@given(st.floats(-60, 60), st.sampled_from(["hann", "triangular"]), st.floats(0.3, 4.0))
def test_compact_transforms_bounded_by_g_l1(w, kind, s):
    # |g_hat| <= ||g||_1, which is s for both kinds
    g = make_window(kind, s)
    v = abs(complex(np.asarray(g.eval_g_hat(np.array([w])))[0]))
    assert v <= s * (1 + 1e-12)
