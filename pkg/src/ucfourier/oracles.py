"""Closed-form reference values computed without the polynomial pipeline.

Nothing here imports :mod:`ucfourier.trigpoly` or the norms; each value is
a direct scalar summation (``math.fsum``) or exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction


def harmonic(n: int) -> float:
    """``H_n = sum_{k=1}^n 1/k``."""
    return math.fsum(1.0 / k for k in range(1, n + 1))


def salem_sum(n: int) -> float:
    """``sum_{k=1}^n (1 - k/n) / (2k)``, which equals ``(H_n - 1) / 2``."""
    return math.fsum((1.0 - k / n) / (2.0 * k) for k in range(1, n + 1))


def salem_sum_exact(n: int) -> Fraction:
    return sum((Fraction(n - k, n) / (2 * k) for k in range(1, n + 1)), Fraction(0))


def salem_sum_ratio(n: int) -> float:
    """``((H_n - 1)/2) / (ln(n)/2)``."""
    return (harmonic(n) - 1.0) / math.log(n)


def sobolev_gn_square(n: int) -> float:
    """``sum_{k=1}^n (1 - k/n)^2 / (2k)``, summed from the top index down."""
    return math.fsum((1.0 - k / n) ** 2 / (2.0 * k) for k in range(n, 0, -1))


def sobolev_gn_square_exact(n: int) -> Fraction:
    return sum((Fraction(n - k, n) ** 2 / (2 * k) for k in range(1, n + 1)), Fraction(0))


def a_norm_gn(n: int) -> float:
    """``sum_{k=1}^{n-1} (1 - k/n) / k``: both signs of ``|g_n^(k)| = (1-k/n)/(2k)``."""
    return math.fsum((1.0 - k / n) / k for k in range(1, n))


def gn_derivative_identity(n: int) -> list[tuple[int, complex]]:
    """Coefficients of ``F_n/2 - 1/2`` as ``(k, value)`` pairs, ``|k| < n``."""
    out = []
    for k in range(-(n - 1), n):
        v = 0.5 * (1.0 - abs(k) / n) - (0.5 if k == 0 else 0.0)
        out.append((k, complex(v)))
    return out
