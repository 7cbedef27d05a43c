"""Trigonometric polynomials on the circle and their coefficient algebra.

A :class:`TrigPoly` of degree ``K`` stores the coefficients ``c_k`` for
``-K <= k <= K`` densely, index ``k`` living at array position ``k + K``.
Values are immutable after construction.  Grid samples live in
:class:`GridFunction`; :func:`synthesize` and :func:`analyze` move between
the two by FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import (
    CoefficientFileError,
    DegreeTooLargeError,
    DomainError,
    GridTooSmallError,
)

#: sup-norm grids hold at least this many points per coefficient slot
OVERSAMPLING = 8
#: at most this many grid maxima are polished by Newton steps
MAX_CANDIDATES = 32

# below this many multiply-adds, direct convolution beats FFT
_DIRECT_CONV_LIMIT = 1 << 14


class TrigPoly:
    """Finite two-sided Fourier coefficient sequence.

    Parameters
    ----------
    coeffs : array_like
        ``2K+1`` complex coefficients ordered ``c_{-K}, ..., c_K``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex]):
        c = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if c.size % 2 != 1:
            raise DomainError(f"coefficient array must have odd length, got {c.size}")
        c.setflags(write=False)
        self._c = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, degree: int = 0) -> "TrigPoly":
        return cls(np.zeros(2 * degree + 1))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex]) -> "TrigPoly":
        K = max((abs(int(k)) for k in coeffs), default=0)
        c = np.zeros(2 * K + 1, dtype=np.complex128)
        for k, v in coeffs.items():
            c[int(k) + K] = v
        return cls(c)

    # -- accessors ----------------------------------------------------
    @property
    def degree(self) -> int:
        return (self._c.size - 1) // 2

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array ``c_{-K}..c_K``."""
        return self._c

    @property
    def indices(self) -> np.ndarray:
        K = self.degree
        return np.arange(-K, K + 1)

    def coeff(self, k: int) -> complex:
        K = self.degree
        if abs(k) > K:
            return 0j
        return complex(self._c[k + K])

    def items(self) -> list[tuple[int, complex]]:
        """Nonzero ``(k, c_k)`` pairs in ascending ``k``."""
        K = self.degree
        return [(int(i) - K, complex(v)) for i, v in enumerate(self._c) if v != 0]

    def is_zero(self) -> bool:
        return not np.any(self._c)

    def is_real_valued(self, rtol: float = 1e-12) -> bool:
        """Hermitian symmetry ``c_{-k} = conj(c_k)``, re-derived on every call."""
        scale = float(np.max(np.abs(self._c), initial=0.0))
        if scale == 0.0:
            return True
        return bool(np.max(np.abs(self._c[::-1] - np.conj(self._c))) <= rtol * scale)

    # -- normalisation ------------------------------------------------
    def trimmed(self) -> "TrigPoly":
        """Drop outer zero coefficients pairs, giving the tight degree."""
        nz = np.flatnonzero(self._c)
        if nz.size == 0:
            return TrigPoly.zero()
        K = self.degree
        D = int(max(abs(nz[0] - K), abs(nz[-1] - K)))
        return TrigPoly(self._c[K - D : K + D + 1])

    def padded(self, degree: int) -> "TrigPoly":
        K = self.degree
        if degree < K:
            raise DomainError(f"cannot pad degree {K} down to {degree}")
        c = np.zeros(2 * degree + 1, dtype=np.complex128)
        c[degree - K : degree + K + 1] = self._c
        return TrigPoly(c)

    # -- arithmetic ---------------------------------------------------
    def _aligned(self, other: "TrigPoly") -> tuple[np.ndarray, np.ndarray]:
        D = max(self.degree, other.degree)
        return self.padded(D)._c, other.padded(D)._c

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return TrigPoly(a + b)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return TrigPoly(a - b)

    def __neg__(self):
        return TrigPoly(-self._c)

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return multiply(self, other)
        if np.isscalar(other):
            return TrigPoly(self._c * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        a, b = self._aligned(other)
        return bool(np.array_equal(a, b))

    __hash__ = None  # type: ignore[assignment]

    def max_coeff_diff(self, other: "TrigPoly") -> float:
        a, b = self._aligned(other)
        return float(np.max(np.abs(a - b)))

    def allclose(self, other: "TrigPoly", atol: float = 1e-12) -> bool:
        return self.max_coeff_diff(other) <= atol

    def __call__(self, t):
        return evaluate(self, t)

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {v:.6g}" for k, v in self.items()[:6])
        more = ", ..." if len(self.items()) > 6 else ""
        return f"TrigPoly(degree={self.degree}, {{{terms}{more}}})"


@dataclass(frozen=True)
class GridFunction:
    """Samples at ``t_j = 2*pi*j/size`` for ``j = 0..size-1``."""

    size: int
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=np.complex128).reshape(-1)
        if s.size != self.size:
            raise DomainError(f"expected {self.size} samples, got {s.size}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def points(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.size) / self.size


def is_power_of_two(M: int) -> bool:
    return M >= 1 and (M & (M - 1)) == 0


def grid_size(degree: int, oversampling: int = OVERSAMPLING) -> int:
    """Smallest power of two holding ``oversampling * (2K+1)`` points."""
    need = max(oversampling * (2 * degree + 1), 2)
    return 1 << (need - 1).bit_length()


def grid_error_factor(degree: int, M: int) -> float:
    """Relative sup-norm deficit bound for an ``M``-point grid.

    At the maximiser of ``|p|`` the real trig polynomial
    ``Re(exp(-i arg p(t*)) p(t))`` has zero slope and, by Bernstein's
    inequality, curvature at most ``K^2 ||p||``.  The nearest grid point is
    within ``h/2``, so the grid maximum is at least ``(1 - (K h)^2 / 8)`` of
    the true sup.  With ``M >= 8(2K+1)`` this is below 0.02.
    """
    h = 2 * np.pi / M
    return (degree * h) ** 2 / 8.0


# -- grid conversions -------------------------------------------------
def _fold(p: TrigPoly, M: int) -> np.ndarray:
    a = np.zeros(M, dtype=np.complex128)
    K = p.degree
    a[np.arange(-K, K + 1) % M] = p.coeffs
    return a


def synthesize(p: TrigPoly, M: int) -> GridFunction:
    """Sample ``p`` on the ``M``-point grid in O(M log M)."""
    if not is_power_of_two(M):
        raise DomainError(f"grid size must be a power of two, got {M}")
    if M < 2 * p.degree + 2:
        raise GridTooSmallError(f"grid of {M} points aliases degree {p.degree}")
    return GridFunction(M, np.fft.ifft(_fold(p, M), norm="forward"))


def analyze(g: GridFunction, K: int) -> TrigPoly:
    """Degree-``K`` interpolant of grid samples (DFT divided by ``M``)."""
    M = g.size
    if K < 0:
        raise DomainError("degree must be nonnegative")
    if 2 * K + 1 > M:
        raise DegreeTooLargeError(f"degree {K} does not fit on {M} points")
    spec = np.fft.fft(g.samples, norm="forward")
    return TrigPoly(spec[np.arange(-K, K + 1) % M])


def evaluate(p: TrigPoly, t) -> np.ndarray:
    """Evaluate ``p`` at arbitrary points (Horner in ``exp(it)``)."""
    t = np.asarray(t, dtype=np.float64)
    c = p.coeffs
    K = p.degree
    if K == 0:
        return np.full(t.shape, c[0], dtype=np.complex128)
    if t.size * c.size <= 1 << 22:
        E = np.exp(1j * np.multiply.outer(t, np.arange(-K, K + 1)))
        return E @ c
    z = np.exp(1j * t)
    acc = np.full(t.shape, c[-1], dtype=np.complex128)
    for cj in c[-2::-1]:
        acc *= z
        acc += cj
    return acc * np.exp(-1j * K * t)


# -- coefficient operators --------------------------------------------
def partial_sum(p: TrigPoly, N: int) -> TrigPoly:
    """Symmetric truncation to ``|k| <= N``."""
    if N < 0:
        raise DomainError("partial sum order must be nonnegative")
    K = p.degree
    if N >= K:
        return p
    return TrigPoly(p.coeffs[K - N : K + N + 1])


def partial_sum_asym(p: TrigPoly, N: int, M: int) -> TrigPoly:
    """Asymmetric truncation to ``-N <= k <= M``."""
    if N < 0 or M < 0:
        raise DomainError("partial sum orders must be nonnegative")
    K = p.degree
    D = min(K, max(N, M))
    c = np.zeros(2 * D + 1, dtype=np.complex128)
    lo, hi = -min(N, K), min(M, K)
    c[lo + D : hi + D + 1] = p.coeffs[lo + K : hi + K + 1]
    return TrigPoly(c)


def multiply(p: TrigPoly, q: TrigPoly) -> TrigPoly:
    """Pointwise product, i.e. coefficient convolution of degree ``Kp+Kq``."""
    a, b = p.coeffs, q.coeffs
    if a.size * b.size <= _DIRECT_CONV_LIMIT or min(a.size, b.size) <= 8:
        return TrigPoly(np.convolve(a, b))
    n = a.size + b.size - 1
    L = 1 << (n - 1).bit_length()
    return TrigPoly(np.fft.ifft(np.fft.fft(a, L) * np.fft.fft(b, L))[:n])


def modulate(p: TrigPoly, n: int) -> TrigPoly:
    """Multiply by ``e_n``: the coefficient at ``k`` moves to ``k + n``."""
    K = p.degree
    D = K + abs(n)
    c = np.zeros(2 * D + 1, dtype=np.complex128)
    c[D - K + n : D + K + n + 1] = p.coeffs
    return TrigPoly(c)


def derivative(p: TrigPoly) -> TrigPoly:
    return TrigPoly(1j * p.indices * p.coeffs)


def translate(p: TrigPoly, a: float) -> TrigPoly:
    """The shifted function ``t -> p(t - a)``."""
    return TrigPoly(p.coeffs * np.exp(-1j * p.indices * a))


def shift_difference(p: TrigPoly, h: float) -> TrigPoly:
    """The polynomial ``t -> p(t + h) - p(t)``."""
    return TrigPoly(p.coeffs * (np.exp(1j * p.indices * h) - 1.0))


# -- sup norm ---------------------------------------------------------
def _basis(t: np.ndarray, K: int) -> np.ndarray:
    """Rows ``e^{ikt}``, ``k = -K..K``, by cumulative products."""
    z = np.exp(1j * t)
    E = np.empty((t.size, 2 * K + 1), dtype=np.complex128)
    E[:, 0] = np.exp(-1j * K * t)
    E[:, 1:] = z[:, None]
    return np.cumprod(E, axis=1)


def _newton_polish(C: np.ndarray, rows: np.ndarray, t0: np.ndarray, h: float,
                   iters: int = 12) -> np.ndarray:
    """Maximise ``|p_r|^2`` by safeguarded Newton steps inside ``t0 +- h``.

    ``C`` stacks coefficient rows; candidate ``i`` belongs to row
    ``rows[i]``.  Returns the largest ``|p|`` seen per candidate at exactly
    evaluated points, so no result exceeds the true sup.
    """
    K = (C.shape[1] - 1) // 2
    k = np.arange(-K, K + 1, dtype=np.float64)
    c = C[rows]
    lo, hi = t0 - h, t0 + h
    t = t0.copy()
    best = np.zeros(t.size)
    act = np.arange(t.size)
    for _ in range(iters):
        E = _basis(t[act], K) * c[act]
        v = E.sum(axis=1)
        Ek = E * k
        d1 = 1j * Ek.sum(axis=1)
        d2 = -(Ek * k).sum(axis=1)
        best[act] = np.maximum(best[act], np.abs(v))
        g = 2.0 * np.real(np.conj(v) * d1)
        H = 2.0 * (np.abs(d1) ** 2 + np.real(np.conj(v) * d2))
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(H < 0, -g / H, np.sign(g) * h / 4)
        step = np.clip(np.nan_to_num(step), -h / 2, h / 2)
        t[act] = np.clip(t[act] + step, lo[act], hi[act])
        act = act[np.abs(step) >= 1e-10]
        if act.size == 0:
            break
    v = (_basis(t, K) * c).sum(axis=1)
    return np.maximum(best, np.abs(v))


def sup_norms(C: np.ndarray, oversampling: int = OVERSAMPLING) -> np.ndarray:
    """:func:`sup_norm` of every row of a stack of same-degree coefficients.

    Parameters
    ----------
    C : ndarray, shape (B, 2K+1)
        Coefficients ``c_{-K}..c_K`` per row.

    Returns
    -------
    ndarray, shape (B,)
    """
    C = np.atleast_2d(np.asarray(C, dtype=np.complex128))
    B, L = C.shape
    K = (L - 1) // 2
    if K == 0:
        return np.abs(C[:, 0])
    # one nonzero coefficient: unimodular up to scale
    mono = np.count_nonzero(C, axis=1) <= 1
    if mono.any():
        out = np.abs(C).max(axis=1)
        rest = ~mono
        if rest.any():
            out[rest] = sup_norms(C[rest], oversampling)
        return out
    M = grid_size(K, oversampling)
    chunk = max(1, (1 << 22) // M)
    if B > chunk:
        return np.concatenate([sup_norms(C[i:i + chunk], oversampling) for i in range(0, B, chunk)])
    F = np.zeros((B, M), dtype=np.complex128)
    F[:, np.arange(-K, K + 1) % M] = C
    a = np.abs(np.fft.ifft(F, axis=1, norm="forward"))
    gmax = a.max(axis=1)
    eps = grid_error_factor(K, M)
    left, right = np.roll(a, 1, axis=1), np.roll(a, -1, axis=1)
    mask = (a >= left) & (a >= right) & (a >= (gmax * (1 - eps))[:, None]) & (a > 0)
    rows, cols = np.nonzero(mask)
    if rows.size == 0:
        return gmax
    # keep the MAX_CANDIDATES largest per row
    order = np.lexsort((-a[rows, cols], rows))
    rows, cols = rows[order], cols[order]
    rank = np.arange(rows.size) - np.searchsorted(rows, rows)
    keep = rank < MAX_CANDIDATES
    rows, cols = rows[keep], cols[keep]
    h = 2 * np.pi / M
    al, ac, ar = left[rows, cols], a[rows, cols], right[rows, cols]
    denom = al - 2 * ac + ar
    with np.errstate(divide="ignore", invalid="ignore"):
        off = np.where(denom < 0, 0.5 * (al - ar) / denom, 0.0)
    t0 = h * (cols + np.clip(np.nan_to_num(off), -0.5, 0.5))
    polished = _newton_polish(C, rows, t0, h)
    out = gmax.copy()
    np.maximum.at(out, rows, polished)
    return out


def sup_norm(p: TrigPoly, oversampling: int = OVERSAMPLING) -> float:
    """``max |p(t)|`` over the circle to relative accuracy well below 1e-6.

    The oversampled grid maximum is within ``grid_error_factor`` of the sup;
    every grid local maximum that could still hold the sup is polished by a
    parabolic step followed by Newton iterations on ``|p|^2``.
    """
    if p.is_zero():
        return 0.0
    return float(sup_norms(p.coeffs[None, :], oversampling)[0])


def refined_max(
    grid_max: np.ndarray, eps: float, refine: Callable[[int], float]
) -> tuple[float, int]:
    """Certified maximum over a family from grid maxima and exact refinement.

    ``grid_max[i]`` is a grid lower bound for member ``i`` whose true value
    is at most ``grid_max[i] / (1 - eps)``.  Members are refined in
    decreasing grid order until no remaining member can beat the best.
    """
    grid_max = np.asarray(grid_max, dtype=np.float64).reshape(-1)
    if grid_max.size == 0:
        return 0.0, -1
    order = np.argsort(-grid_max, kind="stable")
    best, arg = -1.0, int(order[0])
    scale = 1.0 / (1.0 - eps)
    for i in order:
        gi = float(grid_max[i])
        if gi * scale <= best:
            break
        v = max(gi, refine(int(i)))
        if v > best:
            best, arg = v, int(i)
    return best, arg


# -- coefficient files ------------------------------------------------
def read_coefficients(path: str | Path) -> TrigPoly:
    """Read ``k,re,im`` lines; ``#`` starts a comment line."""
    coeffs: dict[int, complex] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [s.strip() for s in line.split(",")]
        if len(parts) != 3:
            raise CoefficientFileError(f"{path}:{lineno}: expected 'k,re,im', got {raw!r}")
        try:
            k = int(parts[0])
            val = complex(float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise CoefficientFileError(f"{path}:{lineno}: {exc}") from None
        if k in coeffs:
            raise CoefficientFileError(f"{path}:{lineno}: duplicate index {k}")
        if not (math.isfinite(val.real) and math.isfinite(val.imag)):
            raise CoefficientFileError(f"{path}:{lineno}: non-finite coefficient")
        coeffs[k] = val
    return TrigPoly.from_dict(coeffs)


def write_coefficients(p: TrigPoly, path: str | Path, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    for k, v in p.items():
        lines.append(f"{k},{v.real:.17g},{v.imag:.17g}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
