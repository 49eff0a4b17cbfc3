# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the O(N*M) quadrature kernels.

Signatures follow ``_pykernels`` except that built-in windows are passed as
an integer kind code plus scale (0 = gaussian, 1 = hann, 2 = triangular).
All loops run without the GIL; each output entry is an independent sum in
fixed index order, so results do not depend on how callers split the work.
"""
import numpy as np

from libc.math cimport sin, cos, exp, fabs, floor, M_PI

cdef double U_EPS = 1e-6
DEF STENCIL = 8


cdef inline double window_value(int kind, double v, double s) noexcept nogil:
    cdef double r
    if kind == 0:
        r = v / s
        return exp(-0.5 * r * r)
    elif kind == 1:
        if fabs(v) > s:
            return 0.0
        r = cos(0.5 * M_PI * v / s)
        return r * r
    else:
        r = 1.0 - fabs(v) / s
        return r if r > 0.0 else 0.0


cdef inline void exp_integral(double u, double A1, double A2,
                              double* re, double* im) noexcept nogil:
    if fabs(u) < U_EPS:
        re[0] = (A1 + A2) - u * u * (A1 * A1 * A1 + A2 * A2 * A2) / 6.0
        im[0] = -0.5 * (A2 * A2 - A1 * A1) * u
    else:
        re[0] = (sin(A1 * u) + sin(A2 * u)) / u
        im[0] = -2.0 * sin(0.5 * (A2 - A1) * u) * sin(0.5 * (A2 + A1) * u) / u


def dft(const double complex[::1] a, const double[::1] x, const double[::1] omega, int sign):
    cdef Py_ssize_t n = a.shape[0], m = omega.shape[0], j, k
    cdef double ph, w, sre, sim, c, s
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for j in range(m):
            w = omega[j] * sign
            sre = 0.0
            sim = 0.0
            for k in range(n):
                ph = x[k] * w
                c = cos(ph)
                s = sin(ph)
                sre = sre + a[k].real * c - a[k].imag * s
                sim = sim + a[k].real * s + a[k].imag * c
            o[j] = sre + 1j * sim
    return out


def dirichlet(const double complex[::1] a, const double[::1] y, const double[::1] x, double A):
    cdef Py_ssize_t n = a.shape[0], m = x.shape[0], i, j
    cdef double u, d, sre, sim
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(m):
            sre = 0.0
            sim = 0.0
            for j in range(n):
                u = x[i] - y[j]
                if fabs(u) < U_EPS:
                    d = (A / M_PI) * (1.0 - (A * u) * (A * u) / 6.0)
                else:
                    d = sin(A * u) / (M_PI * u)
                sre = sre + d * a[j].real
                sim = sim + d * a[j].imag
            o[i] = sre + 1j * sim
    return out


def kernel_trapezoid(const double complex[::1] a, const double[::1] y, const double[::1] x,
                     int kind, double scale, double x0, double A1, double A2):
    cdef Py_ssize_t n = a.shape[0], m = x.shape[0], i, j
    cdef double u, gv, kre, kim, sre, sim
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(m):
            sre = 0.0
            sim = 0.0
            for j in range(n):
                u = y[j] - x[i]
                gv = window_value(kind, u + x0, scale)
                if gv == 0.0:
                    continue
                exp_integral(u, A1, A2, &kre, &kim)
                kre = kre * gv
                kim = kim * gv
                sre = sre + a[j].real * kre - a[j].imag * kim
                sim = sim + a[j].real * kim + a[j].imag * kre
            o[i] = sre + 1j * sim
    return out


cdef inline double complex interp(const double complex[::1] f, Py_ssize_t n,
                                  double ystart, double dy, double mid,
                                  double y, const double* denom) noexcept nogil:
    cdef Py_ssize_t start, r, q
    cdef double t, num
    cdef double diff[STENCIL]
    cdef double complex acc = 0.0
    start = <Py_ssize_t> floor((mid - ystart) / dy) - (STENCIL // 2 - 1)
    if start < 0:
        start = 0
    if start > n - STENCIL:
        start = n - STENCIL
    t = (y - ystart) / dy - start
    for r in range(STENCIL):
        diff[r] = t - r
    for q in range(STENCIL):
        num = 1.0
        for r in range(STENCIL):
            if r != q:
                num = num * diff[r]
        acc = acc + f[start + q] * (num / denom[q])
    return acc


cdef inline double complex panel_sum(const double complex[::1] f, Py_ssize_t n,
                                     double ystart, double dy, double xi,
                                     double lo, double hi,
                                     int kind, double scale, double x0,
                                     double A1, double A2,
                                     const double[::1] gl_x, const double[::1] gl_w,
                                     const double* denom) noexcept nogil:
    cdef Py_ssize_t q, nq = gl_x.shape[0]
    cdef double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo), y, u, gv, kre, kim
    cdef double complex fv, acc = 0.0
    for q in range(nq):
        y = mid + half * gl_x[q]
        u = y - xi
        gv = window_value(kind, u + x0, scale)
        exp_integral(u, A1, A2, &kre, &kim)
        fv = interp(f, n, ystart, dy, mid, y, denom)
        acc = acc + (half * gl_w[q] * gv) * fv * (kre + 1j * kim)
    return acc


def kernel_panels(const double complex[::1] f, double ystart, double dy, const double[::1] x,
                  int kind, double scale, double x0, double A1, double A2,
                  const double[::1] brk, const double[::1] gl_x, const double[::1] gl_w):
    cdef Py_ssize_t n = f.shape[0], m = x.shape[0], nb = brk.shape[0]
    cdef Py_ssize_t i, p, k, k0, k1
    cdef double ystop = ystart + dy * (n - 1), a, b, c, yk
    cdef double denom[STENCIL]
    cdef double complex acc
    cdef int q, r
    for q in range(STENCIL):
        denom[q] = 1.0
        for r in range(STENCIL):
            if r != q:
                denom[q] = denom[q] * (q - r)
    out = np.zeros(m, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(m):
            acc = 0.0
            for p in range(nb - 1):
                a = x[i] - x0 + brk[p]
                b = x[i] - x0 + brk[p + 1]
                if a < ystart:
                    a = ystart
                if b > ystop:
                    b = ystop
                if b <= a:
                    continue
                k0 = <Py_ssize_t> floor((a - ystart) / dy) + 1
                k1 = <Py_ssize_t> floor((b - ystart) / dy) + 1
                if k0 < 0:
                    k0 = 0
                c = a
                for k in range(k0, k1 + 1):
                    if k > n - 1:
                        break
                    yk = ystart + dy * k
                    if yk <= c:
                        continue
                    if yk >= b:
                        break
                    acc = acc + panel_sum(f, n, ystart, dy, x[i], c, yk, kind, scale,
                                          x0, A1, A2, gl_x, gl_w, denom)
                    c = yk
                acc = acc + panel_sum(f, n, ystart, dy, x[i], c, b, kind, scale,
                                      x0, A1, A2, gl_x, gl_w, denom)
            o[i] = acc
    return out
