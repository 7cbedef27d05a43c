"""Fast invariant suite behind ``ucfourier selftest``."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import kernels, oracles
from .constructions import dirichlet, exponential, fejer, random_trig_poly, salem_g
from .multiplier import commutator, mu_lower_empirical, mu_upper_dini, mu_upper_log
from .norms import a_norm, c_norm, sin_log_integral, u_norm, u_norm_asym, uniform_dini
from .trigpoly import (
    analyze,
    derivative,
    grid_size,
    modulate,
    multiply,
    partial_sum,
    partial_sum_asym,
    synthesize,
)


def _roundtrip() -> str:
    worst = 0.0
    for K in (0, 1, 7, 64, 300):
        p = random_trig_poly(K, K + 11)
        M = grid_size(K)
        worst = max(worst, analyze(synthesize(p, M), K).max_coeff_diff(p))
    assert worst <= 1e-12, worst
    return f"max coefficient error {worst:.2e}"


def _projection() -> str:
    p = random_trig_poly(20, 3)
    for N in (0, 5, 19, 25):
        assert partial_sum(partial_sum(p, N), N) == partial_sum(p, N)
        assert partial_sum(partial_sum(p, N), 7) == partial_sum(p, min(N, 7))
    assert partial_sum_asym(p, 20, 20) == partial_sum(p, 20)
    return "S_N idempotent, nested truncation"


def _dirichlet_bound() -> str:
    M = 4096
    x = 2 * np.pi * np.arange(M) / M
    x = np.where(x > np.pi, x - 2 * np.pi, x)
    nz = x != 0
    worst = 0.0
    for N in (1, 16, 128, 512):
        d = np.abs(synthesize(dirichlet(N), M).samples)
        worst = max(worst, float(np.max(d[nz] * np.abs(x[nz]))))
    # equality at x = pi, so allow rounding
    assert worst <= np.pi * (1 + 1e-12), worst
    return f"max |D_N(x)| |x| = {worst:.4f}"


def _norm_chain() -> str:
    for s in range(40):
        p = random_trig_poly(1 + s % 24, 1000 + s)
        c, u, a = c_norm(p), u_norm(p), a_norm(p)
        assert c <= u + 1e-6 and u <= a + 1e-6, (s, c, u, a)
        assert u <= u_norm_asym(p) + 1e-6
    return "c <= u <= a and u <= u_asym on 40 fixtures"


def _fejer_identity() -> str:
    for n in (2, 7, 64):
        r = derivative(salem_g(n)).max_coeff_diff(fejer(n) * 0.5 - exponential(0) * 0.5)
        assert r <= 1e-12, (n, r)
    return "g_n' = F_n/2 - 1/2"


def _salem_sum() -> str:
    for n in (2, 16, 256):
        s = partial_sum(multiply(exponential(n), salem_g(n)), n)
        v = abs(synthesize(s, grid_size(s.degree)).samples[0])
        assert abs(v - oracles.salem_sum(n)) <= 1e-10, n
    return "S_n(e_n g_n)(0) = (H_n - 1)/2"


def _commutator_identity() -> str:
    m, f = salem_g(8), random_trig_poly(12, 5)
    for N in (0, 3, 10, 30):
        lhs = partial_sum(multiply(m, f), N)
        rhs = multiply(m, partial_sum(f, N)) - commutator(m, f, N)
        assert lhs.max_coeff_diff(rhs) <= 1e-14
    assert commutator(exponential(1), exponential(9), 9) == exponential(10)
    return "S_N(mf) = m S_N f - Q_N f"


def _known_values() -> str:
    si = 1.3707621681544884  # Si(pi/2)
    assert abs(uniform_dini(exponential(1)) - 4 * si) <= 1e-3
    assert abs(sin_log_integral(1) - 2 * si) <= 1e-6
    assert abs(mu_upper_dini(exponential(0)) - 1.0) <= 1e-12
    assert abs(mu_upper_log(exponential(3)) - (1 + 2 * sin_log_integral(3))) <= 1e-12
    assert mu_lower_empirical(exponential(0), [salem_g(4), random_trig_poly(5, 1)])[0] == 1.0
    assert abs(u_norm(modulate(salem_g(4), 0)) - u_norm(salem_g(4))) == 0.0
    assert math.isclose(a_norm(salem_g(4)), 13 / 12, rel_tol=1e-14)
    return "closed forms for e_1, J(1), a(g_4)"


def _backends() -> str:
    names = kernels.available_backends()
    if len(names) < 2:
        return f"only {names[0]} available"
    p = random_trig_poly(40, 9)
    M = grid_size(40)
    a = kernels.scan_partial_sums(p.coeffs, M, backend=names[0])
    b = kernels.scan_partial_sums(p.coeffs, M, backend=names[1])
    assert np.max(np.abs(a - b)) <= 1e-12
    return f"{names[0]} and {names[1]} agree"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("dft roundtrip", _roundtrip),
    ("partial sum projection", _projection),
    ("dirichlet pointwise bound", _dirichlet_bound),
    ("norm chain", _norm_chain),
    ("fejer identity", _fejer_identity),
    ("salem sum oracle", _salem_sum),
    ("commutator identity", _commutator_identity),
    ("known values", _known_values),
    ("kernel backends", _backends),
]


def run_selftest(log: Callable[[str], None] = print) -> bool:
    ok = True
    for name, check in CHECKS:
        try:
            detail = check()
            log(f"pass  {name}: {detail}")
        except AssertionError as exc:
            ok = False
            log(f"FAIL  {name}: {exc}")
    return ok
