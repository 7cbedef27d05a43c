# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; same signatures and semantics as ``_kernels_py``."""

import numpy as np

from libc.math cimport sqrt, fabs, cos, sin, M_PI


cdef inline double _absmax(const double* sr, const double* si, Py_ssize_t M) noexcept nogil:
    cdef double best = 0.0, a
    cdef Py_ssize_t j
    for j in range(M):
        a = sr[j] * sr[j] + si[j] * si[j]
        if a > best:
            best = a
    return sqrt(best)


cdef inline void _add_pair(double* sr, double* si, const double* er, const double* ei,
                           Py_ssize_t M, Py_ssize_t N,
                           double pr, double pi_, double mr, double mi) noexcept nogil:
    # s += c_N e^{iNt} + c_{-N} e^{-iNt}
    cdef Py_ssize_t j, idx = 0, mask = M - 1
    cdef double x, y
    for j in range(M):
        x = er[idx]
        y = ei[idx]
        sr[j] += pr * x - pi_ * y + mr * x + mi * y
        si[j] += pr * y + pi_ * x + mi * x - mr * y
        idx = (idx + N) & mask


def scan_partial_sums(const double complex[::1] c, const double complex[::1] E):
    cdef Py_ssize_t M = E.shape[0]
    cdef Py_ssize_t K = (c.shape[0] - 1) // 2
    er_a = np.ascontiguousarray(np.real(E))
    ei_a = np.ascontiguousarray(np.imag(E))
    cdef double[::1] er = er_a, ei = ei_a
    cdef double[::1] sr = np.full(M, c[K].real), si = np.full(M, c[K].imag)
    out_a = np.empty(K + 1)
    cdef double[::1] out = out_a
    cdef Py_ssize_t N
    cdef double complex cp, cm
    out[0] = sqrt(c[K].real * c[K].real + c[K].imag * c[K].imag)
    with nogil:
        for N in range(1, K + 1):
            cp = c[K + N]
            cm = c[K - N]
            if cp.real == 0 and cp.imag == 0 and cm.real == 0 and cm.imag == 0:
                out[N] = out[N - 1]
                continue
            _add_pair(&sr[0], &si[0], &er[0], &ei[0], M, N, cp.real, cp.imag, cm.real, cm.imag)
            out[N] = _absmax(&sr[0], &si[0], M)
    return out_a


def scan_asym(const double complex[::1] c, const double complex[::1] E, Py_ssize_t nneg, Py_ssize_t npos):
    cdef Py_ssize_t M = E.shape[0]
    cdef Py_ssize_t K = (c.shape[0] - 1) // 2
    er_a = np.ascontiguousarray(np.real(E))
    ei_a = np.ascontiguousarray(np.imag(E))
    cdef double[::1] er = er_a, ei = ei_a
    cdef double[::1] br = np.full(M, c[K].real), bi = np.full(M, c[K].imag)
    cdef double[::1] sr = np.empty(M), si = np.empty(M)
    out_a = np.empty((nneg + 1, npos + 1))
    cdef double[:, ::1] out = out_a
    cdef Py_ssize_t N, m, j
    cdef double complex cv
    with nogil:
        for N in range(nneg + 1):
            if N > 0:
                cv = c[K - N]
                if cv.real != 0 or cv.imag != 0:
                    _add_pair(&br[0], &bi[0], &er[0], &ei[0], M, N, 0.0, 0.0, cv.real, cv.imag)
            for j in range(M):
                sr[j] = br[j]
                si[j] = bi[j]
            out[N, 0] = _absmax(&sr[0], &si[0], M)
            for m in range(1, npos + 1):
                cv = c[K + m]
                if cv.real != 0 or cv.imag != 0:
                    _add_pair(&sr[0], &si[0], &er[0], &ei[0], M, m, cv.real, cv.imag, 0.0, 0.0)
                    out[N, m] = _absmax(&sr[0], &si[0], M)
                else:
                    out[N, m] = out[N, m - 1]
    return out_a


def scan_commutator(const double complex[::1] mgrid, const double complex[::1] cf,
                    const double complex[::1] cmf, const double complex[::1] E, Py_ssize_t nmax):
    cdef Py_ssize_t M = E.shape[0]
    cdef Py_ssize_t Kf = (cf.shape[0] - 1) // 2
    cdef Py_ssize_t Kg = (cmf.shape[0] - 1) // 2
    er_a = np.ascontiguousarray(np.real(E))
    ei_a = np.ascontiguousarray(np.imag(E))
    cdef double[::1] er = er_a, ei = ei_a
    cdef double[::1] mr = np.ascontiguousarray(np.real(mgrid)), mi = np.ascontiguousarray(np.imag(mgrid))
    cdef double[::1] ar = np.full(M, cf[Kf].real), ai = np.full(M, cf[Kf].imag)
    cdef double[::1] gr = np.full(M, cmf[Kg].real), gi = np.full(M, cmf[Kg].imag)
    out_a = np.empty(nmax + 1)
    cdef double[::1] out = out_a
    cdef Py_ssize_t N, j
    cdef bint changed
    cdef double complex p, q

    with nogil:
        for N in range(nmax + 1):
            changed = N == 0
            if N > 0 and N <= Kf:
                p = cf[Kf + N]
                q = cf[Kf - N]
                if p.real != 0 or p.imag != 0 or q.real != 0 or q.imag != 0:
                    _add_pair(&ar[0], &ai[0], &er[0], &ei[0], M, N, p.real, p.imag, q.real, q.imag)
                    changed = True
            if N > 0 and N <= Kg:
                p = cmf[Kg + N]
                q = cmf[Kg - N]
                if p.real != 0 or p.imag != 0 or q.real != 0 or q.imag != 0:
                    _add_pair(&gr[0], &gi[0], &er[0], &ei[0], M, N, p.real, p.imag, q.real, q.imag)
                    changed = True
            if changed:
                out[N] = _commutator_max(&mr[0], &mi[0], &ar[0], &ai[0], &gr[0], &gi[0], M)
            else:
                out[N] = out[N - 1]
    return out_a


cdef inline double _commutator_max(const double* mr, const double* mi, const double* ar,
                                   const double* ai, const double* gr, const double* gi,
                                   Py_ssize_t M) noexcept nogil:
    cdef double best = 0.0, x, y, a
    cdef Py_ssize_t j
    for j in range(M):
        x = mr[j] * ar[j] - mi[j] * ai[j] - gr[j]
        y = mr[j] * ai[j] + mi[j] * ar[j] - gi[j]
        a = x * x + y * y
        if a > best:
            best = a
    return sqrt(best)


def shift_sup(const double complex[::1] x, Py_ssize_t smax):
    cdef Py_ssize_t M = x.shape[0], mask = M - 1
    out_a = np.empty(smax + 1)
    cdef double[::1] out = out_a
    cdef double[::1] xr = np.ascontiguousarray(np.real(x)), xi = np.ascontiguousarray(np.imag(x))
    cdef Py_ssize_t s, j, i
    cdef double best, dr, di, a
    with nogil:
        for s in range(smax + 1):
            best = 0.0
            for j in range(M):
                i = (j + s) & mask
                dr = xr[i] - xr[j]
                di = xi[i] - xi[j]
                a = dr * dr + di * di
                if a > best:
                    best = a
            out[s] = sqrt(best)
    return out_a


def horner(const double complex[::1] c, theta):
    theta = np.ascontiguousarray(theta, dtype=np.float64)
    cdef const double[::1] th = theta.reshape(-1)
    cdef Py_ssize_t i, j, n = th.shape[0]
    cdef Py_ssize_t L = c.shape[0], K = (L - 1) // 2
    zr_a, zi_a = np.empty(n), np.empty(n)
    ar_a, ai_a = np.empty(n), np.empty(n)
    cdef double[::1] zr = zr_a, zi = zi_a, ar = ar_a, ai = ai_a
    out_a = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_a
    cdef double cr, ci, tr, wr, wi
    with nogil:
        for i in range(n):
            zr[i] = cos(th[i])
            zi[i] = sin(th[i])
            ar[i] = c[L - 1].real
            ai[i] = c[L - 1].imag
        # coefficient-major order: the inner loop has no carried dependency
        for j in range(L - 2, -1, -1):
            cr = c[j].real
            ci = c[j].imag
            for i in range(n):
                tr = ar[i] * zr[i] - ai[i] * zi[i] + cr
                ai[i] = ar[i] * zi[i] + ai[i] * zr[i] + ci
                ar[i] = tr
        for i in range(n):
            wr = cos(K * th[i])
            wi = -sin(K * th[i])
            out[i] = (ar[i] * wr - ai[i] * wi) + (ar[i] * wi + ai[i] * wr) * 1j
    return out_a.reshape(np.shape(theta))


cdef inline void _eval(const double complex* c, Py_ssize_t L, double theta,
                       double* vr, double* vi) noexcept nogil:
    # Horner in z = e^{i theta}, then multiply by z^{-K}
    cdef Py_ssize_t K = (L - 1) // 2, j
    cdef double zr = cos(theta), zi = sin(theta)
    cdef double ar = c[L - 1].real, ai = c[L - 1].imag, tr
    for j in range(L - 2, -1, -1):
        tr = ar * zr - ai * zi + c[j].real
        ai = ar * zi + ai * zr + c[j].imag
        ar = tr
    zr = cos(K * theta)
    zi = -sin(K * theta)
    vr[0] = ar * zr - ai * zi
    vi[0] = ar * zi + ai * zr


cdef struct DiniCtx:
    const double complex* c
    Py_ssize_t L
    double t
    double pr
    double pi_
    double dabs
    long intervals
    long max_intervals
    int max_depth


cdef inline double _dini_f(DiniCtx* ctx, double u) noexcept nogil:
    cdef double vr, vi, dr, di
    if u == 0.0:
        return ctx.dabs
    _eval(ctx.c, ctx.L, ctx.t + u, &vr, &vi)
    dr = vr - ctx.pr
    di = vi - ctx.pi_
    return sqrt(dr * dr + di * di) / fabs(u)


cdef double _simpson(DiniCtx* ctx, double a, double m, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) noexcept nogil:
    cdef double lm = 0.5 * (a + m), rm = 0.5 * (m + b)
    cdef double flm = _dini_f(ctx, lm), frm = _dini_f(ctx, rm)
    cdef double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    cdef double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    cdef double delta = left + right - whole
    if fabs(delta) <= 15.0 * tol or depth >= ctx.max_depth or ctx.intervals >= ctx.max_intervals:
        return left + right + delta / 15.0
    ctx.intervals += 1
    return (_simpson(ctx, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
            + _simpson(ctx, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1))


def dini_panels(const double complex[::1] c, ts, edges, offsets, double tol,
                int max_depth, long max_intervals):
    cdef const double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef const double[::1] ev = np.ascontiguousarray(edges, dtype=np.float64)
    cdef const long long[::1] ov = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef Py_ssize_t T = tv.shape[0], i, e, L = c.shape[0], K = (L - 1) // 2
    out_a = np.empty(T)
    cdef double[::1] out = out_a
    dc_a = np.ascontiguousarray(1j * np.arange(-K, K + 1) * np.asarray(c))
    cdef const double complex[::1] dc = dc_a
    cdef DiniCtx ctx
    cdef double dr, di, a, b, m, fa, fm, fb, total, density = tol / (2 * M_PI)
    ctx.c = &c[0]
    ctx.L = L
    ctx.max_depth = max_depth
    ctx.max_intervals = max_intervals
    with nogil:
        for i in range(T):
            ctx.t = tv[i]
            _eval(&c[0], L, ctx.t, &ctx.pr, &ctx.pi_)
            _eval(&dc[0], L, ctx.t, &dr, &di)
            ctx.dabs = sqrt(dr * dr + di * di)
            total = 0.0
            for e in range(ov[i], ov[i + 1] - 1):
                a = ev[e]
                b = ev[e + 1]
                m = 0.5 * (a + b)
                fa = _dini_f(&ctx, a)
                fm = _dini_f(&ctx, m)
                fb = _dini_f(&ctx, b)
                ctx.intervals = 1
                total += _simpson(&ctx, a, m, b, fa, fm, fb,
                                  (b - a) / 6.0 * (fa + 4.0 * fm + fb), density * (b - a), 0)
            out[i] = total
    return out_a
