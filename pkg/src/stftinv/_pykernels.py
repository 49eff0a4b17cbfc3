"""Vectorized NumPy implementations of the hot quadrature kernels.

This is the fallback used when the compiled ``_ckernels`` extension is not
available (or ``STFTINV_PURE_PYTHON`` is set).  Signatures mirror the
compiled module exactly; window evaluators are passed as vectorized
callables instead of kind codes.
"""
import numpy as np

# Rows per block for the O(N*M) kernels; bounds temporary memory to ~16 MB.
_BLOCK = 512
#: Below this |u| the kernel uses its Taylor expansion.
U_EPS = 1e-6
#: Interpolation stencil width for off-grid evaluation of sampled signals.
STENCIL = 8


def dft(a, x, omega, sign):
    """``out[j] = sum_k a[k] * exp(sign * 1j * x[k] * omega[j])``."""
    a = np.asarray(a, dtype=np.complex128)
    out = np.empty(len(omega), dtype=np.complex128)
    for lo in range(0, len(omega), _BLOCK):
        w = omega[lo:lo + _BLOCK]
        phase = np.multiply.outer(w, x)
        out[lo:lo + _BLOCK] = np.exp((1j * sign) * phase) @ a
    return out


def dirichlet_values(u, A):
    """``sin(A u) / (pi u)`` with the removable singularity filled in."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < U_EPS
    safe = np.where(small, 1.0, u)
    val = np.sin(A * safe) / (np.pi * safe)
    return np.where(small, (A / np.pi) * (1.0 - (A * u) ** 2 / 6.0), val)


def dirichlet(a, y, x, A):
    """``out[i] = sum_j a[j] * sin(A (x_i - y_j)) / (pi (x_i - y_j))``."""
    a = np.asarray(a, dtype=np.complex128)
    out = np.empty(len(x), dtype=np.complex128)
    for lo in range(0, len(x), _BLOCK):
        u = np.subtract.outer(x[lo:lo + _BLOCK], y)
        out[lo:lo + _BLOCK] = dirichlet_values(u, A) @ a
    return out


def truncated_exponential_integral(u, A1, A2):
    """``int_{-A1}^{A2} exp(-i u w) dw`` written as in the kernel formula.

    Returns real and imaginary parts separately.
    """
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < U_EPS
    safe = np.where(small, 1.0, u)
    re = (np.sin(A1 * safe) + np.sin(A2 * safe)) / safe
    im = -2.0 * np.sin(0.5 * (A2 - A1) * safe) * np.sin(0.5 * (A2 + A1) * safe) / safe
    re_t = (A1 + A2) - u * u * (A1 ** 3 + A2 ** 3) / 6.0
    im_t = -0.5 * (A2 * A2 - A1 * A1) * u
    return np.where(small, re_t, re), np.where(small, im_t, im)


def _kernel_values(u, g, x0, A1, A2):
    re, im = truncated_exponential_integral(u, A1, A2)
    return np.conj(g(u + x0)) * (re + 1j * im)


def kernel_trapezoid(a, y, x, g, x0, A1, A2):
    """``out[i] = sum_j a[j] * K(x_i, y_j)`` for pre-weighted samples ``a``."""
    a = np.asarray(a, dtype=np.complex128)
    out = np.empty(len(x), dtype=np.complex128)
    for lo in range(0, len(x), _BLOCK):
        u = np.subtract.outer(y, x[lo:lo + _BLOCK]).T
        out[lo:lo + _BLOCK] = _kernel_values(u, g, x0, A1, A2) @ a
    return out


def lagrange_weights(t):
    """Weights of the 8-point Lagrange interpolant at offsets ``t`` (in cells).

    Nodes sit at 0..7; ``t`` has any shape, result has shape ``t.shape + (8,)``.
    """
    t = np.asarray(t, dtype=float)[..., None]
    nodes = np.arange(STENCIL, dtype=float)
    diff = t - nodes
    w = np.empty(diff.shape)
    for m in range(STENCIL):
        num = np.ones(diff.shape[:-1])
        den = 1.0
        for r in range(STENCIL):
            if r != m:
                num = num * diff[..., r]
                den *= m - r
        w[..., m] = num / den
    return w


def panel_nodes(ystart, dy, n, cuts, gl_x, gl_w):
    """Gauss-Legendre nodes on ``[cuts[0], cuts[-1]]`` refined at grid nodes.

    ``cuts`` are sorted interior breakpoints (including both ends).  Each piece
    between consecutive cuts is split further at every grid node strictly
    inside it, so no panel straddles a breakpoint or a sample.

    Returns ``(nodes, weights, stencil_start, offsets)`` with one row of
    ``len(gl_x)`` entries per panel.
    """
    edges = [cuts[:1]]
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        k0 = int(np.floor((a - ystart) / dy)) + 1
        k1 = int(np.ceil((b - ystart) / dy)) - 1
        inner = ystart + dy * np.arange(max(k0, 0), min(k1, n - 1) + 1)
        inner = inner[(inner > a) & (inner < b)]
        edges.append(inner)
        edges.append(np.array([b]))
    e = np.concatenate(edges)
    lo, hi = e[:-1], e[1:]
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * gl_x[None, :]
    weights = half[:, None] * gl_w[None, :]
    start = np.floor((mid - ystart) / dy).astype(int) - (STENCIL // 2 - 1)
    start = np.clip(start, 0, n - STENCIL)
    offsets = (nodes - ystart) / dy - start[:, None]
    return nodes, weights, start, offsets


def interpolate(f, start, offsets):
    """Evaluate the local Lagrange interpolant of samples ``f`` at panel nodes."""
    idx = start[:, None] + np.arange(STENCIL)[None, :]
    stencil_vals = f[idx]
    w = lagrange_weights(offsets)
    return np.einsum("pqm,pm->pq", w, stencil_vals)


def kernel_panels(f, ystart, dy, x, g, x0, A1, A2, brk, gl_x, gl_w):
    """Breakpoint-aware quadrature of ``int f(y) K(x_i, y) dy``.

    ``brk`` holds the sorted kink locations of the window in its own
    coordinate ``v = y - x + x0``; its first and last entries bound the
    support.  ``f`` holds raw (unweighted) samples.
    """
    f = np.asarray(f, dtype=np.complex128)
    n = len(f)
    ystop = ystart + dy * (n - 1)
    out = np.zeros(len(x), dtype=np.complex128)
    for i, xi in enumerate(x):
        cuts = xi - x0 + np.asarray(brk)
        cuts = np.clip(cuts, ystart, ystop)
        if cuts[-1] <= cuts[0]:
            continue
        nodes, weights, start, offsets = panel_nodes(ystart, dy, n, cuts, gl_x, gl_w)
        fv = interpolate(f, start, offsets)
        kv = _kernel_values(nodes - xi, g, x0, A1, A2)
        out[i] = np.sum(weights * fv * kv)
    return out


def panel_integral(f, ystart, dy, cuts, phi, gl_x, gl_w):
    """``int f(y) phi(y) dy`` over ``[cuts[0], cuts[-1]]`` with ``f`` interpolated off-grid."""
    f = np.asarray(f, dtype=np.complex128)
    nodes, weights, start, offsets = panel_nodes(ystart, dy, len(f), np.asarray(cuts, float),
                                                 gl_x, gl_w)
    return np.sum(weights * interpolate(f, start, offsets) * phi(nodes))
