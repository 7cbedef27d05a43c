"""Pointwise multipliers of the space of uniformly convergent Fourier series.

The multiplier norm ``||m||_MU = sup_{||f||_U <= 1} ||m f||_U`` is not
computable from finitely many tests; this module brackets it.  Upper bounds
come from the Dini-type integral conditions, lower bounds from explicit
witness functions ``f``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import kernels
from .constructions import random_trig_poly, salem_g
from .errors import DomainError
from .norms import c_norm, dini_integral, sin_log_integrals, u_norm, uniform_dini
from .trigpoly import (
    TrigPoly,
    grid_error_factor,
    grid_size,
    multiply,
    partial_sum,
    refined_max,
    sup_norm,
    synthesize,
)

#: witnesses with a smaller U-norm are rejected (g_1 is the zero polynomial)
MIN_WITNESS_NORM = 1e-12
#: ties within this margin go to the earlier witness
TIE_MARGIN = 1e-12

Witness = Union[TrigPoly, tuple[str, TrigPoly]]


def commutator(m: TrigPoly, f: TrigPoly, N: int) -> TrigPoly:
    """``Q_N f = m S_N(f) - S_N(m f)``."""
    return multiply(m, partial_sum(f, N)) - partial_sum(multiply(m, f), N)


def commutator_sup_bound(m: TrigPoly) -> float:
    """Uniform bound on ``||Q_N||_{C -> C}`` over all ``N``: the uniform
    Dini integral of ``m``."""
    return uniform_dini(m)


def commutator_norms(m: TrigPoly, f: TrigPoly, nmax: int) -> np.ndarray:
    """Grid maxima of ``|Q_N f|`` for ``N = 0..nmax`` (incremental scan)."""
    K = m.degree + f.degree
    M = grid_size(K)
    mf = multiply(m, f)
    mgrid = synthesize(m, M).samples
    return kernels.scan_commutator(mgrid, f.coeffs, mf.coeffs, nmax)


def max_commutator_norm(m: TrigPoly, f: TrigPoly, nmax: int) -> tuple[float, int]:
    """``max_{N <= nmax} ||Q_N f||_C`` and the maximising ``N``."""
    K = m.degree + f.degree
    gm = commutator_norms(m, f, nmax)
    cache: dict[int, float] = {}

    def refine(N: int) -> float:
        if N not in cache:
            cache[N] = sup_norm(commutator(m, f, N))
        return cache[N]

    return refined_max(gm, grid_error_factor(K, grid_size(K)), refine)


def mu_upper_dini(m: TrigPoly) -> float:
    """``||m||_C + sup_t int_{|u|<=pi} |m(t+u) - m(t)| / |u| du``."""
    return c_norm(m) + uniform_dini(m)


def mu_upper_omega(m: TrigPoly) -> float:
    """``||m||_C + 2 int_0^pi omega(m, d) / d dd``."""
    return c_norm(m) + 2.0 * dini_integral(m)


def log_termwise_sum(m: TrigPoly) -> float:
    """``sum_{k != 0} |m_k| J(k)``: the termwise bound on the Dini integral."""
    items = [(k, abs(v)) for k, v in m.items() if k != 0]
    if not items:
        return 0.0
    ks = np.array([k for k, _ in items])
    w = np.array([a for _, a in items])
    return float(np.sum(w * sin_log_integrals(ks)))


def mu_upper_log(m: TrigPoly) -> float:
    """``||m||_C + 2 sum_{k != 0} |m_k| J(k)``.

    Since ``omega(m, d) <= sum_{k != 0} |m_k| |2 sin(k d / 2)|``, this
    dominates :func:`mu_upper_omega`, and ``J(k)`` grows like ``log |k|``,
    giving a concrete log-weighted Wiener bound.
    """
    return c_norm(m) + 2.0 * log_termwise_sum(m)


def _named(witnesses: Iterable[Witness]) -> list[tuple[str, TrigPoly]]:
    out = []
    for i, w in enumerate(witnesses):
        if isinstance(w, TrigPoly):
            out.append((f"witness[{i}]", w))
        else:
            out.append((str(w[0]), w[1]))
    return out


def mu_lower_empirical(m: TrigPoly, witnesses: Sequence[Witness]) -> tuple[float, str]:
    """``max_f ||m f||_U / ||f||_U`` over the witnesses, with the maximiser.

    Every ratio is a valid lower bound on the multiplier norm.  Witnesses
    with ``||f||_U < 1e-12`` are skipped.
    """
    named = _named(witnesses)
    if not named:
        raise DomainError("empty witness list")
    best, arg = -1.0, ""
    for desc, f in named:
        uf = u_norm(f)
        if uf < MIN_WITNESS_NORM:
            continue
        r = u_norm(multiply(m, f)) / uf
        if r > best + TIE_MARGIN:
            best, arg = r, desc
    if best < 0:
        raise DomainError("every witness has vanishing U-norm")
    return best, arg


def default_witnesses(
    n_list: Sequence[int], n_random: int = 20, seed: int = 0, degree: int = 16
) -> list[tuple[str, TrigPoly]]:
    """``g_n`` for ``n`` in ``n_list`` followed by seeded random polynomials."""
    out = [(f"g:{n}", salem_g(n)) for n in n_list if n >= 2]
    out += [(f"rand:{degree}:{seed + i}", random_trig_poly(degree, seed + i))
            for i in range(n_random)]
    return out


@dataclass
class MultiplierEstimate:
    function: str
    c_norm: Optional[float] = None
    upper_dini: Optional[float] = None
    upper_omega: Optional[float] = None
    upper_log: Optional[float] = None
    lower_empirical: Optional[float] = None
    witness: Optional[str] = None

    def uppers(self) -> list[float]:
        return [v for v in (self.upper_dini, self.upper_omega, self.upper_log) if v is not None]

    def violations(self, slack: float = 1e-4) -> list[str]:
        out = []
        ups = self.uppers()
        if self.lower_empirical is not None and ups and self.lower_empirical > min(ups) + slack:
            out.append(f"lower {self.lower_empirical} exceeds upper {min(ups)}")
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def estimate_multiplier(
    m: TrigPoly,
    function: str = "",
    witnesses: Optional[Sequence[Witness]] = None,
    n_list: Sequence[int] = (2, 4, 8, 16, 32, 64),
    seed: int = 0,
) -> MultiplierEstimate:
    """All three upper bounds and the empirical lower bound for ``m``."""
    if witnesses is None:
        witnesses = default_witnesses(n_list, seed=seed)
    est = MultiplierEstimate(function=function)
    est.c_norm = c_norm(m)
    est.upper_dini = est.c_norm + uniform_dini(m)
    est.upper_omega = est.c_norm + 2.0 * dini_integral(m)
    est.upper_log = est.c_norm + 2.0 * log_termwise_sum(m)
    est.lower_empirical, est.witness = mu_lower_empirical(m, witnesses)
    return est
