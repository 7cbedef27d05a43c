"""Pure numpy kernels; reference implementation and import-time fallback.

Every function mirrors one in ``_kernels.pyx`` with the same signature.
``E`` is the table ``exp(2*pi*i*j/M)``, so ``exp(i*N*t_j) = E[(N*j) mod M]``
is an exact lookup rather than a drifting recurrence.
"""

import numpy as np

from .quadrature import adaptive_simpson


def _absmax(s):
    return float(np.sqrt(np.max(s.real * s.real + s.imag * s.imag)))


def scan_partial_sums(c, E):
    """Grid maxima of ``|S_N p|`` for ``N = 0..K`` by incremental updates."""
    M = E.size
    K = (c.size - 1) // 2
    j = np.arange(M)
    s = np.full(M, c[K], dtype=np.complex128)
    out = np.empty(K + 1)
    out[0] = abs(c[K])
    for N in range(1, K + 1):
        cp, cm = c[K + N], c[K - N]
        if cp == 0 and cm == 0:
            out[N] = out[N - 1]
            continue
        e = E[(N * j) & (M - 1)]
        s += cp * e + cm * np.conj(e)
        out[N] = _absmax(s)
    return out


def scan_asym(c, E, nneg, npos):
    """Grid maxima of ``|S_{N,M} p|`` for ``0 <= N <= nneg``, ``0 <= M <= npos``."""
    M = E.size
    K = (c.size - 1) // 2
    j = np.arange(M)
    base = np.full(M, c[K], dtype=np.complex128)
    out = np.empty((nneg + 1, npos + 1))
    for N in range(nneg + 1):
        if N > 0 and c[K - N] != 0:
            base += c[K - N] * np.conj(E[(N * j) & (M - 1)])
        s = base.copy()
        out[N, 0] = _absmax(s)
        for m in range(1, npos + 1):
            if c[K + m] != 0:
                s += c[K + m] * E[(m * j) & (M - 1)]
                out[N, m] = _absmax(s)
            else:
                out[N, m] = out[N, m - 1]
    return out


def scan_commutator(mgrid, cf, cmf, E, nmax):
    """Grid maxima of ``|m S_N f - S_N(m f)|`` for ``N = 0..nmax``."""
    M = E.size
    Kf = (cf.size - 1) // 2
    Kg = (cmf.size - 1) // 2
    j = np.arange(M)
    A = np.full(M, cf[Kf], dtype=np.complex128)
    B = np.full(M, cmf[Kg], dtype=np.complex128)
    out = np.empty(nmax + 1)
    out[0] = _absmax(mgrid * A - B)
    for N in range(1, nmax + 1):
        changed = False
        if N <= Kf and (cf[Kf + N] != 0 or cf[Kf - N] != 0):
            e = E[(N * j) & (M - 1)]
            A += cf[Kf + N] * e + cf[Kf - N] * np.conj(e)
            changed = True
        if N <= Kg and (cmf[Kg + N] != 0 or cmf[Kg - N] != 0):
            e = E[(N * j) & (M - 1)]
            B += cmf[Kg + N] * e + cmf[Kg - N] * np.conj(e)
            changed = True
        out[N] = _absmax(mgrid * A - B) if changed else out[N - 1]
    return out


def shift_sup(x, smax):
    """``max_j |x[j+s] - x[j]|`` (cyclic) for ``s = 0..smax``."""
    out = np.empty(smax + 1)
    for s in range(smax + 1):
        out[s] = _absmax(np.roll(x, -s) - x)
    return out


def horner(c, theta):
    """Evaluate the polynomial with coefficients ``c`` at points ``theta``."""
    K = (c.size - 1) // 2
    z = np.exp(1j * theta)
    acc = np.full(theta.shape, c[-1], dtype=np.complex128)
    for cj in c[-2::-1]:
        acc *= z
        acc += cj
    return acc * np.exp(-1j * K * theta)


def dini_panels(c, ts, edges, offsets, tol, max_depth, max_intervals):
    """For each ``t``: integral over ``|u| <= pi`` of ``|p(t+u) - p(t)| / |u|``.

    ``edges[offsets[i]:offsets[i+1]]`` are increasing panel edges for
    ``ts[i]`` spanning ``[-pi, pi]``.  Each panel is an adaptive Simpson
    integral with tolerance ``tol * width / (2 pi)``.  The removable
    singularity at ``u = 0`` takes the limit ``|p'(t)|``.
    """
    K = (c.size - 1) // 2
    k = np.arange(-K, K + 1)
    pt = horner(c, ts)
    dpt = np.abs(horner(1j * k * c, ts))
    counts = np.diff(offsets) - 1
    owner = np.repeat(np.arange(ts.size), counts)
    starts = np.concatenate([edges[offsets[i]:offsets[i + 1] - 1] for i in range(ts.size)])
    stops = np.concatenate([edges[offsets[i] + 1:offsets[i + 1]] for i in range(ts.size)])

    def f(u, g):
        own = owner[g]
        out = np.empty(u.shape)
        zero = u == 0.0
        nz = ~zero
        out[zero] = dpt[own[zero]]
        un = u[nz]
        on = own[nz]
        out[nz] = np.abs(horner(c, ts[on] + un) - pt[on]) / np.abs(un)
        return out

    vals = adaptive_simpson(f, starts, stops, tol * (stops - starts) / (2 * np.pi),
                            panels=1, max_depth=max_depth, max_intervals=max_intervals)
    return np.bincount(owner, weights=vals, minlength=ts.size)
