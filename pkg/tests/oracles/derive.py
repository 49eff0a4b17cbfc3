"""Recompute the frozen reference values in ``tests/oracle_values.py``.

Independent of the package: everything here is closed forms or adaptive
high-precision quadrature with mpmath.  Run ``python tests/oracles/derive.py``
and compare with the frozen table.
"""
import mpmath as mp

mp.mp.dps = 30


def hann_ghat_l1(periods=400, far_periods=200):
    """``int |g_hat|`` for the unit hann window, periodwise plus an averaged tail."""
    pi = mp.pi

    def mag(w):
        if abs(w - pi) < mp.mpf(10) ** -25:
            return mp.mpf(1) / 2
        return abs(pi ** 2 * mp.sinc(w) / (pi ** 2 - w ** 2))

    total = mp.quad(mag, [0, pi])
    total += sum(mp.quad(mag, [k * pi, (k + 1) * pi]) for k in range(1, periods))
    a = periods * pi
    b = a + far_periods * pi
    total += mp.quad(mag, mp.linspace(a, b, far_periods + 1))
    # beyond b, |sin| averages to 2/pi
    total += mp.quad(lambda w: 2 * pi / (w * (w ** 2 - pi ** 2)), [b, mp.inf])
    return 2 * total


def derive():
    return {
        "sqrt_2pi": mp.sqrt(2 * mp.pi),
        "pi_quarter": mp.pi ** 0.25,
        "sqrt_pi": mp.sqrt(mp.pi),
        "stft_gauss_abs_2_2": mp.sqrt(mp.pi) * mp.e ** -2,
        "kernel_u1_A4": mp.e ** -0.5 * mp.quad(mp.cos, [-4, 4]),
        "h0_gauss_A3": 2 * mp.pi * (mp.ncdf(3) - mp.ncdf(-3)),
        "hann_ghat_l1": hann_ghat_l1(),
        "gauss_l2_sq": mp.sqrt(mp.pi),
    }


if __name__ == "__main__":
    for k, v in derive().items():
        print(f"{k} = {mp.nstr(v, 17)}")
