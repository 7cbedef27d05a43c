"""Norms, seminorms and continuity moduli of trigonometric polynomials.

Logarithms are natural throughout.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, SpecParseError
from .quadrature import adaptive_simpson
from .trigpoly import (
    OVERSAMPLING,
    TrigPoly,
    derivative,
    grid_error_factor,
    grid_size,
    partial_sum,
    partial_sum_asym,
    refined_max,
    shift_difference,
    sup_norm,
    sup_norms,
    synthesize,
)

UNIFORM_DINI_TOL = 1e-4
VARIATION_TOL = 1e-6
DINI_TOL = 1e-6


# -- weights ----------------------------------------------------------
@dataclass(frozen=True)
class WeightSequence:
    """Positive weight ``gamma(n)``, ``n >= 0``.

    ``kind`` is ``"constant"`` (``gamma = c``), ``"log_power"``
    (``gamma(n) = log(n+2)**alpha``) or ``"table"`` (explicit values; indices
    past the end repeat the last value).
    """

    kind: str
    param: float = 1.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("constant", "log_power", "table"):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind == "constant" and not (self.param > 0 and math.isfinite(self.param)):
            raise DomainError("constant weight must be positive and finite")
        if self.kind == "log_power" and not math.isfinite(self.param):
            raise DomainError("log power must be finite")
        if self.kind == "table":
            if not self.values:
                raise DomainError("weight table is empty")
            if any(not (v > 0 and math.isfinite(v)) for v in self.values):
                raise DomainError("weight table values must be positive and finite")

    @classmethod
    def constant(cls, c: float = 1.0) -> "WeightSequence":
        return cls("constant", float(c))

    @classmethod
    def log_power(cls, alpha: float) -> "WeightSequence":
        return cls("log_power", float(alpha))

    @classmethod
    def table(cls, values: Sequence[float]) -> "WeightSequence":
        return cls("table", 0.0, tuple(float(v) for v in values))

    @classmethod
    def parse(cls, spec: str) -> "WeightSequence":
        """``const:c``, ``logpow:alpha`` or ``table:v0,v1,...``."""
        kind, _, rest = spec.partition(":")
        try:
            if kind == "const":
                return cls.constant(float(rest))
            if kind == "logpow":
                return cls.log_power(float(rest))
            if kind == "table":
                return cls.table([float(v) for v in rest.split(",")])
        except ValueError as exc:
            raise SpecParseError(f"bad weight spec {spec!r}: {exc}") from None
        raise SpecParseError(f"unknown weight spec {spec!r}")

    def __call__(self, n) -> np.ndarray:
        n = np.asarray(n)
        if np.any(n < 0):
            raise DomainError("weights are indexed by n >= 0")
        if self.kind == "constant":
            out = np.full(n.shape, self.param, dtype=np.float64)
        elif self.kind == "log_power":
            out = np.log(n + 2.0) ** self.param
        else:
            v = np.asarray(self.values)
            out = v[np.minimum(n, v.size - 1)]
        if out.size and not (np.all(np.isfinite(out)) and np.min(out) > 0):
            raise DomainError(f"weight {self} is not positive and finite on the queried range")
        return out

    def __str__(self) -> str:
        if self.kind == "constant":
            return f"const:{self.param:g}"
        if self.kind == "log_power":
            return f"logpow:{self.param:g}"
        return "table:" + ",".join(f"{v:g}" for v in self.values)


# -- coefficient norms ------------------------------------------------
def a_gamma_norm(p: TrigPoly, gamma: WeightSequence) -> float:
    """``sum_k |c_k| gamma(|k|)``."""
    return math.fsum(np.abs(p.coeffs) * gamma(np.abs(p.indices)))


def a_norm(p: TrigPoly) -> float:
    """Wiener norm ``sum_k |c_k|``."""
    return math.fsum(np.abs(p.coeffs))


def log_weighted_a_norm(p: TrigPoly) -> float:
    return math.fsum(np.abs(p.coeffs) * np.log(np.abs(p.indices) + 2.0))


def sobolev_half_norm(p: TrigPoly) -> float:
    """``(sum_k |c_k|^2 |k|)^(1/2)``."""
    return math.sqrt(math.fsum(np.abs(p.coeffs) ** 2 * np.abs(p.indices)))


# -- sup-type norms ---------------------------------------------------
def c_norm(p: TrigPoly, oversampling: int = OVERSAMPLING) -> float:
    return sup_norm(p, oversampling)


def _memo_refine(build, oversampling: int):
    cache: dict = {}

    def refine(key):
        if key not in cache:
            cache[key] = sup_norm(build(key), oversampling)
        return cache[key]

    return refine


def u_norm(p: TrigPoly, oversampling: int = OVERSAMPLING) -> float:
    """``max_N ||S_N p||_C`` over ``N = 0..degree``; exact for polynomials
    because ``S_N p = p`` once ``N >= degree``."""
    K = p.degree
    if K == 0 or p.is_zero():
        return float(abs(p.coeffs[K]))
    M = grid_size(K, oversampling)
    gm = kernels.scan_partial_sums(p.coeffs, M)
    refine = _memo_refine(lambda N: partial_sum(p, N), oversampling)
    best, _ = refined_max(gm, grid_error_factor(K, M), refine)
    return best


def u_norm_asym(p: TrigPoly, oversampling: int = OVERSAMPLING) -> float:
    """``max ||S_{N,M} p||_C`` over ``0 <= N, M <= degree``."""
    K = p.degree
    if K == 0 or p.is_zero():
        return float(abs(p.coeffs[K]))
    nz = np.flatnonzero(p.coeffs) - K
    # S_{N,M} stops changing once N, M pass the outermost nonzero index
    nneg, npos = max(0, -int(nz.min())), max(0, int(nz.max()))
    M = grid_size(K, oversampling)
    gm = kernels.scan_asym(p.coeffs, M, nneg, npos)
    refine = _memo_refine(lambda i: partial_sum_asym(p, *divmod(i, npos + 1)), oversampling)
    best, _ = refined_max(gm.ravel(), grid_error_factor(K, M), refine)
    return best


# -- integral functionals ---------------------------------------------
def variation_norm(p: TrigPoly, tol: float = VARIATION_TOL) -> float:
    """Total variation ``int_0^{2 pi} |p'(t)| dt`` by adaptive Simpson."""
    if p.degree == 0 or p.is_zero():
        return 0.0
    dc = derivative(p).coeffs
    panels = max(16, 4 * (p.degree + 1))
    f = lambda x, g: np.abs(kernels.horner(dc, x))  # noqa: E731
    return float(adaptive_simpson(f, [0.0], [2 * np.pi], tol, panels=panels)[0])


def _uniform_dini_panels(K: int) -> int:
    return 2 * K + 8


def _quotient_roots(p: TrigPoly, ts: np.ndarray, chunk: int = 64) -> list[np.ndarray]:
    """Zeros in ``(-pi, pi)`` of ``u -> (p(t+u) - p(t)) / u`` for real ``p``.

    These are the kinks of the uniform Dini integrand.  Sign changes are
    bracketed on the ``M``-point sup-norm grid (rows by one batched FFT) and
    polished by Illinois regula falsi with exact evaluation.
    """
    K = p.degree
    c, k = p.coeffs, p.indices
    L = grid_size(K)
    s = np.arange(-L // 2, L // 2 + 1)
    u = 2 * np.pi * s / L
    cols = s % L
    dpt = np.real(kernels.horner(1j * k * c, ts))
    out: list[np.ndarray] = []
    for lo in range(0, ts.size, chunk):
        tt = ts[lo : lo + chunk]
        A = np.zeros((tt.size, L), dtype=np.complex128)
        A[:, k % L] = c * np.exp(1j * np.multiply.outer(tt, k))
        X = np.fft.ifft(A, norm="forward", axis=1)
        d = np.real(X[:, cols] - X[:, :1])
        with np.errstate(divide="ignore", invalid="ignore"):
            q = d / u
        q[:, L // 2] = dpt[lo : lo + chunk]
        row, col = np.nonzero(q[:, :-1] * q[:, 1:] < 0)
        exact_r, exact_c = np.nonzero(q[:, 1:-1] == 0)
        a, b = u[col], u[col + 1]
        fa, fb = q[row, col], q[row, col + 1]
        t_of = tt[row]
        pt = np.real(X[row, 0])
        side = np.zeros(a.size, dtype=np.int8)
        for _ in range(40):
            x = (a * fb - b * fa) / (fb - fa)
            fx = np.real(kernels.horner(c, t_of + x)) - pt
            with np.errstate(divide="ignore", invalid="ignore"):
                fx = np.where(x == 0, dpt[lo + row], fx / x)
            right = fx * fb > 0  # root in [a, x]
            left = fx * fa > 0  # root in [x, b]
            hit = ~(right | left)
            b = np.where(right | hit, x, b)
            fb = np.where(right, fx, fb)
            a = np.where(left | hit, x, a)
            fa = np.where(left, fx, fa)
            # Illinois: halve the value at an endpoint retained twice running
            fa = np.where(right & (side == -1), 0.5 * fa, fa)
            fb = np.where(left & (side == 1), 0.5 * fb, fb)
            side = np.where(right, -1, np.where(left, 1, side)).astype(np.int8)
            if np.all(np.abs(b - a) < 1e-12):
                break
        roots = 0.5 * (a + b)
        for i in range(tt.size):
            extra = u[1:-1][exact_c[exact_r == i]]
            out.append(np.concatenate([roots[row == i], extra]))
    return out


def _dini_edges(p: TrigPoly, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    K = p.degree
    npan = _uniform_dini_panels(K)
    base = np.linspace(-np.pi, np.pi, 2 * npan + 1)
    if p.is_real_valued():
        per_t = [np.unique(np.concatenate([base, r])) for r in _quotient_roots(p, ts)]
    else:
        per_t = [base] * ts.size
    offsets = np.concatenate([[0], np.cumsum([e.size for e in per_t])])
    return np.concatenate(per_t), offsets


def _dini_values(p: TrigPoly, ts: np.ndarray, tol: float) -> np.ndarray:
    edges, offsets = _dini_edges(p, ts)
    return kernels.dini_panels(p.coeffs, ts, edges, offsets, tol)


def uniform_dini(p: TrigPoly, tol: float = UNIFORM_DINI_TOL) -> float:
    """``sup_t int_{|u| <= pi} |p(t+u) - p(t)| / |u| du``.

    Evaluated on a coarse grid of ``t`` (power of two, at least
    ``max(256, 4K)`` points) and then refined twice on a local sub-grid
    around the best point.  For real ``p`` the zeros of the difference
    quotient become panel edges, so adaptive Simpson only meets smooth
    pieces.
    """
    K = p.degree
    if K == 0 or p.is_zero():
        return 0.0
    T = max(256, 1 << max(0, (4 * K - 1).bit_length()))
    ts = 2 * np.pi * np.arange(T) / T
    vals = _dini_values(p, ts, tol)
    i = int(np.argmax(vals))
    best, t, width = float(vals[i]), float(ts[i]), 2 * np.pi / T
    for _ in range(2):
        local = t + np.linspace(-width, width, 9)
        lv = _dini_values(p, local, tol)
        j = int(np.argmax(lv))
        if lv[j] > best:
            best, t = float(lv[j]), float(local[j])
        width /= 4
    return best


def _golden_max(f, a: np.ndarray, b: np.ndarray, iters: int = 30) -> tuple[np.ndarray, np.ndarray]:
    """Golden-section search, vectorised over brackets ``[a_i, b_i]``.

    ``f`` maps an array of points to an array of values.
    """
    r = 0.5 * (math.sqrt(5.0) - 1.0)
    a, b = a.astype(np.float64), b.astype(np.float64)
    x1, x2 = b - r * (b - a), a + r * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        left = f1 >= f2
        # left: keep [a, x2]; else keep [x1, b]
        b = np.where(left, x2, b)
        a = np.where(left, a, x1)
        nx1 = np.where(left, b - r * (b - a), x2)
        nx2 = np.where(left, x1, a + r * (b - a))
        fresh = np.where(left, nx1, nx2)
        fv = f(fresh)
        f1, f2 = np.where(left, fv, f2), np.where(left, f1, fv)
        x1, x2 = nx1, nx2
    pick = f1 >= f2
    return np.where(pick, x1, x2), np.where(pick, f1, f2)


_GAP_SUBDIVISIONS = 8


class _OmegaProfile:
    """Modulus of continuity of a fixed polynomial.

    ``omega(delta)`` is the running maximum of ``W(x) = sup_t |p(t+x) - p(t)|``
    over ``0 <= x <= delta``.  ``W`` is sampled at grid shifts ``s h``
    (``h = 2 pi / M``, ``M`` the sup-norm grid) by the shift kernel; grid
    values that can raise the running maximum are refined by
    :func:`sup_norms`, and each grid gap next to such a shift is sampled
    at ``_GAP_SUBDIVISIONS`` points with every sub-grid peak polished by
    golden section in ``x``.  With every relevant
    interior peak among the candidates, ``W`` between consecutive
    candidates stays below the running maximum at the right end, so adding
    ``W(delta)`` keeps the result nondecreasing.
    """

    def __init__(self, p: TrigPoly):
        self.p = p
        K = p.degree
        M = grid_size(K)
        h = self.h = 2 * np.pi / M
        self._k = p.indices.astype(np.float64)
        W = kernels.shift_sup(synthesize(p, M).samples, M // 2)
        eps = grid_error_factor(K, M)
        n = W.size
        prior = np.concatenate([[0.0], np.maximum.accumulate(W)[:-1]])
        vals = W.copy()
        up = np.flatnonzero(W > prior * (1.0 - eps))
        if up.size:
            vals[up] = np.maximum(W[up], self.exact(h * up))
        # W is a maximum of smooth branches, so a peak can sit next to a
        # kink inside one grid gap: sample relevant gaps finely and polish
        # every sub-grid peak
        gaps = np.union1d(up, up - 1)
        gaps = gaps[(gaps >= 0) & (gaps < n - 1)]
        xs, pv = np.zeros(0), np.zeros(0)
        if gaps.size:
            q = _GAP_SUBDIVISIONS
            sub = (gaps[:, None] + np.arange(q + 1) / q).ravel() * h
            sv = self.exact(sub).reshape(gaps.size, q + 1)
            sv[:, 0] = vals[gaps]
            sv[:, -1] = vals[gaps + 1]
            mid = sv[:, 1:-1]
            pk = (mid >= sv[:, :-2]) & (mid >= sv[:, 2:])
            r, j = np.nonzero(pk)
            hs = h / q
            centre = h * gaps[r] + hs * (j + 1)
            gx, gv = _golden_max(self.exact, centre - hs, centre + hs, iters=24)
            xs = np.concatenate([sub, gx])
            pv = np.concatenate([sv.ravel(), gv])
        allx = np.concatenate([h * np.arange(n), xs])
        allv = np.concatenate([vals, pv])
        order = np.argsort(allx, kind="stable")
        self.xs = allx[order]
        self.running = np.maximum.accumulate(allv[order])

    def exact(self, x) -> np.ndarray:
        """``W(x)`` by the batched sup norm of ``p(. + x) - p``."""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        C = self.p.coeffs[None, :] * (np.exp(1j * x[:, None] * self._k) - 1.0)
        return sup_norms(C)

    def values(self, deltas) -> np.ndarray:
        d = np.atleast_1d(np.asarray(deltas, dtype=np.float64))
        out = np.zeros(d.shape)
        pos = d > 0
        if pos.any():
            i = np.searchsorted(self.xs, d[pos], side="right") - 1
            out[pos] = np.maximum(self.running[i], self.exact(d[pos]))
        return out

    def __call__(self, delta: float) -> float:
        return float(self.values([delta])[0])


def _check_delta(delta: float) -> None:
    if not (0.0 <= delta <= np.pi):
        raise DomainError(f"delta must lie in [0, pi], got {delta}")


def modulus_of_continuity(p: TrigPoly, delta: float) -> float:
    """``omega(p, delta) = sup_{|t1 - t2| <= delta} |p(t1) - p(t2)|``."""
    _check_delta(delta)
    if delta == 0.0 or p.degree == 0 or p.is_zero():
        return 0.0
    return _OmegaProfile(p)(delta)


def modulus_curve(p: TrigPoly, deltas: Sequence[float]) -> np.ndarray:
    """:func:`modulus_of_continuity` at many ``delta`` sharing one profile."""
    for d in deltas:
        _check_delta(d)
    if p.degree == 0 or p.is_zero():
        return np.zeros(len(deltas))
    return _OmegaProfile(p).values(deltas)


def dini_integral(p: TrigPoly, tol: float = DINI_TOL) -> float:
    """``int_0^pi omega(p, delta) / delta d delta``.

    The interval ``[0, delta0]`` is dropped, its contribution being at most
    ``delta0 sup|p'| <= tol / 10`` since ``omega(p, delta) <= delta sup|p'|``.
    Log-spaced panels cover ``[delta0, h]`` and one panel per grid cell the
    rest; the remaining tolerance is split evenly across panels.
    """
    if p.degree == 0 or p.is_zero():
        return 0.0
    prof = _OmegaProfile(p)
    h = prof.h
    lip = float(np.sum(np.abs(p.indices * p.coeffs)))  # >= sup |p'|
    delta0 = min(h / 2, 0.1 * tol / lip)
    nlog = max(1, math.ceil(math.log2(h / delta0)))
    cells = h * np.arange(2, grid_size(p.degree) // 2 + 1)
    edges = np.concatenate([np.geomspace(delta0, h, nlog + 1), cells])
    edges[-1] = np.pi
    lo, hi = edges[:-1], edges[1:]

    def f(x, g):
        return prof.values(x) / x

    vals = adaptive_simpson(f, lo, hi, 0.9 * tol / lo.size, panels=1)
    return float(math.fsum(vals))


# -- the log integral -------------------------------------------------
_PIECE_LOCK = threading.Lock()
_PIECES = np.empty(0)  # int_{j pi}^{(j+1) pi} |sin u| / u du
_HALVES = np.empty(0)  # int_{j pi}^{(j+1/2) pi} |sin u| / u du
_PIECE_TOL = 1e-12
_CUM = np.zeros(1)  # prefix sums of _PIECES
_CUM_STATE = [0.0, 0.0]  # compensated running sum


def _sinc_abs(x, g):
    out = np.ones_like(x)
    nz = x != 0
    out[nz] = np.abs(np.sin(x[nz])) / x[nz]
    return out


def _ensure_pieces(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Pieces for ``j < n`` and their prefix sums ``_CUM[q] = sum_{j<q}``."""
    global _PIECES, _HALVES, _CUM
    with _PIECE_LOCK:
        have = _PIECES.size
        if n > have:
            n = max(n, 2 * have, 64)
            j = np.arange(have, n, dtype=np.float64)
            full = adaptive_simpson(_sinc_abs, j * np.pi, (j + 1) * np.pi, _PIECE_TOL, panels=4)
            half = adaptive_simpson(_sinc_abs, j * np.pi, (j + 0.5) * np.pi, _PIECE_TOL, panels=4)
            # compensated running sum keeps prefixes correctly rounded
            cum = np.empty(full.size)
            hi, lo = _CUM_STATE
            for i, x in enumerate(full.tolist()):
                t = hi + x
                lo += (hi - t) + x if abs(hi) >= abs(x) else (x - t) + hi
                hi = t
                cum[i] = hi + lo
            _CUM_STATE[:] = [hi, lo]
            _PIECES = np.concatenate([_PIECES, full])
            _HALVES = np.concatenate([_HALVES, half])
            _CUM = np.concatenate([_CUM, cum])
        return _PIECES, _HALVES


def sin_log_integral(k: int) -> float:
    """``J(k) = int_0^pi |2 sin(k delta / 2)| / delta d delta``.

    With ``u = |k| delta / 2`` this is ``2 int_0^{|k| pi/2} |sin u| / u du``,
    assembled from cached half-period pieces, each accurate to 1e-12.
    """
    if int(k) == 0:
        raise DomainError("J(k) is defined for k != 0")
    return float(sin_log_integrals([int(k)])[0])


def sin_log_integrals(ks) -> np.ndarray:
    """Vectorised :func:`sin_log_integral` from cached prefix sums."""
    ks = np.abs(np.asarray(ks, dtype=np.int64))
    if np.any(ks == 0):
        raise DomainError("J(k) is defined for k != 0")
    if ks.size == 0:
        return np.zeros(0)
    q, odd = np.divmod(ks, 2)
    _, half = _ensure_pieces(int(q.max()) + 1)
    return 2.0 * (_CUM[q] + np.where(odd == 1, half[q], 0.0))


# -- reports ----------------------------------------------------------
NORM_FIELDS = (
    "c_norm",
    "u_norm",
    "u_norm_asym",
    "a_norm",
    "a_gamma_norm",
    "variation_norm",
    "sobolev_half_norm",
    "dini_integral",
    "uniform_dini",
    "log_weighted_a_norm",
)


@dataclass
class NormReport:
    """Named norm values of one function; ``None`` marks not computed."""

    function: str
    gamma: Optional[str] = None
    c_norm: Optional[float] = None
    u_norm: Optional[float] = None
    u_norm_asym: Optional[float] = None
    a_norm: Optional[float] = None
    a_gamma_norm: Optional[float] = None
    variation_norm: Optional[float] = None
    sobolev_half_norm: Optional[float] = None
    dini_integral: Optional[float] = None
    uniform_dini: Optional[float] = None
    log_weighted_a_norm: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def populated(self) -> list[str]:
        return [f for f in NORM_FIELDS if getattr(self, f) is not None]

    def violations(self, slack: float = 1e-6) -> list[str]:
        """Broken ``C <= U <= A`` relations among computed fields."""
        out = []
        if self.c_norm is not None and self.u_norm is not None and self.c_norm > self.u_norm + slack:
            out.append(f"c_norm {self.c_norm} > u_norm {self.u_norm}")
        if self.u_norm is not None and self.a_norm is not None and self.u_norm > self.a_norm + slack:
            out.append(f"u_norm {self.u_norm} > a_norm {self.a_norm}")
        if (self.u_norm is not None and self.u_norm_asym is not None
                and self.u_norm > self.u_norm_asym + slack):
            out.append(f"u_norm {self.u_norm} > u_norm_asym {self.u_norm_asym}")
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


_FUNCS = {
    "c_norm": c_norm,
    "u_norm": u_norm,
    "u_norm_asym": u_norm_asym,
    "a_norm": a_norm,
    "variation_norm": variation_norm,
    "sobolev_half_norm": sobolev_half_norm,
    "dini_integral": dini_integral,
    "uniform_dini": uniform_dini,
    "log_weighted_a_norm": log_weighted_a_norm,
}


def norm_report(
    p: TrigPoly,
    function: str = "",
    gamma: Optional[WeightSequence] = None,
    fields: Optional[Sequence[str]] = None,
) -> NormReport:
    """Compute the requested norms (default: all; ``a_gamma_norm`` needs ``gamma``)."""
    fields = NORM_FIELDS if fields is None else tuple(fields)
    unknown = set(fields) - set(NORM_FIELDS)
    if unknown:
        raise DomainError(f"unknown norm fields {sorted(unknown)}")
    rep = NormReport(function=function, gamma=str(gamma) if gamma is not None else None)
    for name in fields:
        if name == "a_gamma_norm":
            if gamma is not None:
                rep.a_gamma_norm = a_gamma_norm(p, gamma)
            continue
        setattr(rep, name, _FUNCS[name](p))
    return rep
