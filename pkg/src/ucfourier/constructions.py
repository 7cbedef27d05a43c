"""Named trigonometric polynomials: kernels, exponentials, test functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .trigpoly import TrigPoly, sup_norm

KINDS = ("dirichlet", "fejer", "salem_g", "exponential", "random")


def dirichlet(N: int) -> TrigPoly:
    """``D_N = sum_{|k|<=N} e_k``."""
    if N < 0:
        raise DomainError("Dirichlet kernel order must be >= 0")
    return TrigPoly(np.ones(2 * N + 1))


def fejer(n: int) -> TrigPoly:
    """``F_n`` with coefficients ``1 - |k|/n`` on ``|k| <= n-1``."""
    if n < 1:
        raise DomainError("Fejer kernel order must be >= 1")
    k = np.arange(-(n - 1), n)
    return TrigPoly(1.0 - np.abs(k) / n)


def salem_g(n: int) -> TrigPoly:
    """``g_n(t) = sum_{k=1}^n (1 - k/n) sin(kt) / k``, stored at degree ``n-1``.

    In exponential form ``c_k = (1 - |k|/n) / (2ik)`` for ``1 <= |k| <= n``;
    the ``k = n`` weight vanishes, and ``g_1`` is the zero polynomial.
    """
    if n < 1:
        raise DomainError("g_n needs n >= 1")
    K = n - 1
    c = np.zeros(2 * K + 1, dtype=np.complex128)
    if K:
        k = np.arange(1, K + 1)
        w = (1.0 - k / n) / (2j * k)
        c[K + k] = w
        c[K - k] = -w
    return TrigPoly(c)


def exponential(n: int) -> TrigPoly:
    """``e_n(t) = exp(int)``."""
    return TrigPoly.from_dict({int(n): 1.0})


def _coefficient_draw(seed: int, k: int) -> tuple[float, float]:
    # Philox keyed by (seed, k): each index owns an independent stream, so
    # coefficients do not depend on generation order.
    rng = np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), k]))
    x, y = rng.standard_normal(2)
    return float(x), float(y)


def random_trig_poly(K: int, seed: int, normalization: str = "none") -> TrigPoly:
    """Seeded real-valued test polynomial of degree ``K``.

    ``c_0 = x_0``, ``c_k = (x_k + i y_k) / (sqrt(2) (1 + k))`` for ``k >= 1`` and
    ``c_{-k} = conj(c_k)``, with ``(x_k, y_k)`` standard normals drawn from a
    Philox stream keyed by ``(seed, k)``.  ``normalization="unit_sup_norm"``
    rescales to sup norm 1.
    """
    if K < 0:
        raise DomainError("degree must be >= 0")
    if seed < 0:
        raise DomainError("seed must be unsigned")
    if normalization not in ("none", "unit_sup_norm"):
        raise DomainError(f"unknown normalization {normalization!r}")
    c = np.zeros(2 * K + 1, dtype=np.complex128)
    c[K] = _coefficient_draw(seed, 0)[0]
    for k in range(1, K + 1):
        x, y = _coefficient_draw(seed, k)
        v = complex(x, y) / (np.sqrt(2.0) * (1 + k))
        c[K + k] = v
        c[K - k] = v.conjugate()
    p = TrigPoly(c)
    if normalization == "unit_sup_norm":
        s = sup_norm(p)
        if s > 0:
            p = TrigPoly(c / s)
    return p


def fejer_smooth(p: TrigPoly, n: int) -> TrigPoly:
    """Cesaro mean ``sigma_n(p) = F_n * p``: coefficients damped by ``1 - |k|/n``."""
    if n < 1:
        raise DomainError("Fejer order must be >= 1")
    w = np.clip(1.0 - np.abs(p.indices) / n, 0.0, None)
    return TrigPoly(p.coeffs * w).trimmed()


@dataclass(frozen=True)
class KernelSpec:
    """Descriptor of a named construction."""

    kind: str
    order: int
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if (self.seed is not None) != (self.kind == "random"):
            raise DomainError("seed is required for random and forbidden otherwise")
        if self.kind in ("dirichlet", "random") and self.order < 0:
            raise DomainError(f"{self.kind} order must be >= 0")
        if self.kind in ("fejer", "salem_g") and self.order < 1:
            raise DomainError(f"{self.kind} order must be >= 1")

    def build(self) -> TrigPoly:
        if self.kind == "dirichlet":
            return dirichlet(self.order)
        if self.kind == "fejer":
            return fejer(self.order)
        if self.kind == "salem_g":
            return salem_g(self.order)
        if self.kind == "exponential":
            return exponential(self.order)
        return random_trig_poly(self.order, self.seed)

    def __str__(self) -> str:
        short = {"dirichlet": "dirichlet", "fejer": "fejer", "salem_g": "g",
                 "exponential": "e", "random": "rand"}[self.kind]
        if self.kind == "random":
            return f"rand:{self.order}:{self.seed}"
        return f"{short}:{self.order}"
