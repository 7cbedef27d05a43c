import numpy as np
import pytest

from ucfourier.constructions import (
    KernelSpec,
    dirichlet,
    exponential,
    fejer,
    fejer_smooth,
    random_trig_poly,
    salem_g,
)
from ucfourier.errors import DomainError
from ucfourier.norms import a_gamma_norm, WeightSequence
from ucfourier.trigpoly import TrigPoly, derivative, sup_norm, synthesize


def test_dirichlet():
    assert dirichlet(0) == exponential(0)
    for N in (0, 1, 7, 33):
        assert dirichlet(N)(0.0).real == pytest.approx(2 * N + 1, rel=1e-15)
        assert np.all(dirichlet(N).coeffs == 1)


def test_dirichlet_times_half_angle_sine():
    M = 4096
    x = 2 * np.pi * np.arange(M) / M
    d = synthesize(dirichlet(16), M).samples
    assert np.max(np.abs(d * np.sin(x / 2))) <= 1 + 1e-12


def test_dirichlet_closed_form():
    M = 2048
    x = 2 * np.pi * np.arange(M) / M
    s = np.sin(x / 2)
    keep = np.abs(s) > 1e-8
    for N in (3, 64, 200):
        d = synthesize(dirichlet(N), M).samples.real
        closed = np.sin((N + 0.5) * x[keep]) / s[keep]
        assert np.max(np.abs(d[keep] - closed) / np.maximum(np.abs(closed), 1.0)) < 1e-8


def test_fejer():
    assert fejer(1) == exponential(0)
    M = 1 << 14
    assert np.min(synthesize(fejer(64), M).samples.real) >= -1e-10
    assert fejer(5).coeff(3) == pytest.approx(0.4)
    with pytest.raises(DomainError):
        fejer(0)


@pytest.mark.parametrize("n", [1, 2, 7, 64, 128])
def test_fejer_cesaro_identity(n):
    acc = TrigPoly.zero(n - 1)
    for N in range(n):
        acc = acc + dirichlet(N)
    assert (acc * (1.0 / n)).max_coeff_diff(fejer(n)) <= 1e-13


def test_salem_g_examples():
    assert salem_g(1).is_zero()
    g2 = salem_g(2)
    assert g2.degree == 1
    assert g2.coeff(1) == pytest.approx(-0.25j)
    assert g2.coeff(-1) == pytest.approx(0.25j)
    for n in range(1, 65):
        assert abs(synthesize(salem_g(n), 256).samples[0]) < 1e-15
    with pytest.raises(DomainError):
        salem_g(0)


def test_salem_g_degree_is_tight():
    for n in (2, 3, 10, 100):
        g = salem_g(n)
        assert g.degree == n - 1
        assert g.coeff(n - 1) != 0


def test_salem_g_is_odd_and_real():
    for n in (2, 5, 33):
        g = salem_g(n)
        assert g.is_real_valued()
        assert np.all(g.coeffs.real == 0)
        assert np.all(g.coeffs[::-1] == -g.coeffs)
        t = np.linspace(0, np.pi, 101)
        assert np.max(np.abs(g(-t) + g(t))) < 1e-10


def test_salem_g_derivative_identity():
    for n in (2, 7, 50):
        target = fejer(n) * 0.5 - exponential(0) * 0.5
        assert derivative(salem_g(n)).max_coeff_diff(target) <= 1e-15


def test_salem_g_coefficients():
    n = 9
    g = salem_g(n)
    for k in range(1, n):
        assert g.coeff(k) == pytest.approx((1 - k / n) / (2j * k), abs=1e-16)
        assert g.coeff(-k) == pytest.approx(-(1 - k / n) / (2j * k), abs=1e-16)


def test_exponential():
    assert exponential(0) == TrigPoly([1])
    assert exponential(-3).coeff(-3) == 1
    for n in (-40, 0, 5):
        assert sup_norm(exponential(n)) == pytest.approx(1.0)
        w = WeightSequence.log_power(1.5)
        assert a_gamma_norm(exponential(n), w) == pytest.approx(float(w(abs(n))))


def test_random_determinism_and_symmetry():
    a = random_trig_poly(32, 7)
    b = random_trig_poly(32, 7)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert not np.array_equal(a.coeffs, random_trig_poly(32, 8).coeffs)
    for seed in range(10):
        assert random_trig_poly(32, seed).is_real_valued()


def test_random_is_order_independent():
    # low-degree coefficients do not depend on K
    small, big = random_trig_poly(5, 3), random_trig_poly(40, 3)
    assert big.coeffs[40 - 5:40 + 6].tolist() == small.coeffs.tolist()


def test_random_unit_normalization():
    for seed in range(5):
        p = random_trig_poly(20, seed, "unit_sup_norm")
        assert sup_norm(p) == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(DomainError):
        random_trig_poly(3, 1, "bogus")


def test_fejer_smooth():
    p = random_trig_poly(10, 2)
    s = fejer_smooth(p, 4)
    assert s.degree == 3
    assert s.coeff(2) == pytest.approx(p.coeff(2) * 0.5)


def test_kernel_spec():
    assert str(KernelSpec("salem_g", 8)) == "g:8"
    assert str(KernelSpec("random", 4, 9)) == "rand:4:9"
    assert KernelSpec("dirichlet", 3).build() == dirichlet(3)
    assert KernelSpec("random", 4, 9).build() == random_trig_poly(4, 9)
    with pytest.raises(DomainError):
        KernelSpec("random", 4)
    with pytest.raises(DomainError):
        KernelSpec("fejer", 3, seed=1)
    with pytest.raises(DomainError):
        KernelSpec("salem_g", 0)
    with pytest.raises(DomainError):
        KernelSpec("poisson", 3)
