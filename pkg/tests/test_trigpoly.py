import numpy as np
import pytest

from ucfourier.constructions import dirichlet, exponential, random_trig_poly, salem_g
from ucfourier.errors import (
    CoefficientFileError,
    DegreeTooLargeError,
    DomainError,
    GridTooSmallError,
)
from ucfourier.trigpoly import (
    GridFunction,
    TrigPoly,
    analyze,
    derivative,
    evaluate,
    grid_error_factor,
    grid_size,
    modulate,
    multiply,
    partial_sum,
    partial_sum_asym,
    read_coefficients,
    refined_max,
    shift_difference,
    sup_norm,
    synthesize,
    translate,
    write_coefficients,
)


def test_constructor_rejects_even_length():
    with pytest.raises(DomainError):
        TrigPoly([1.0, 2.0])


def test_coefficients_are_read_only():
    p = TrigPoly([1, 2, 3])
    with pytest.raises(ValueError):
        p.coeffs[0] = 5


def test_from_dict_and_accessors():
    p = TrigPoly.from_dict({-2: 1j, 1: 3.0})
    assert p.degree == 2
    assert p.coeff(-2) == 1j
    assert p.coeff(1) == 3.0
    assert p.coeff(0) == 0
    assert p.coeff(17) == 0
    assert p.items() == [(-2, 1j), (1, 3 + 0j)]


def test_trim_and_pad():
    p = TrigPoly([0, 0, 1, 2, 0, 0, 0])
    assert p.degree == 3
    q = p.trimmed()
    assert q.degree == 1
    assert q == p
    assert q.padded(5).degree == 5
    assert TrigPoly.zero(4).trimmed().degree == 0
    with pytest.raises(DomainError):
        p.padded(1)


def test_real_valued_flag_is_rederived():
    assert salem_g(9).is_real_valued()
    assert dirichlet(3).is_real_valued()
    assert not exponential(1).is_real_valued()
    assert TrigPoly.zero().is_real_valued()
    assert TrigPoly([1j, 0, -1j]).is_real_valued()  # 2 sin t
    assert not TrigPoly([1j, 0, 1j]).is_real_valued()
    assert not TrigPoly([1, 0, 1 + 1e-9]).is_real_valued()


# -- synthesize / analyze ------------------------------------------------
def test_synthesize_constant():
    g = synthesize(exponential(0), 8)
    assert np.allclose(g.samples, 1.0, atol=0, rtol=0)


def test_synthesize_exponential():
    g = synthesize(exponential(1), 8)
    assert np.allclose(g.samples, np.exp(2j * np.pi * np.arange(8) / 8), atol=1e-15)


def test_synthesize_g2_is_half_sine():
    g = synthesize(salem_g(2), 16)
    assert np.max(np.abs(g.samples - 0.5 * np.sin(2 * np.pi * np.arange(16) / 16))) < 1e-15


def test_synthesize_guards():
    with pytest.raises(GridTooSmallError):
        synthesize(dirichlet(4), 8)  # needs M >= 10
    with pytest.raises(DomainError):
        synthesize(dirichlet(1), 12)


def test_analyze_examples():
    p = analyze(synthesize(salem_g(8), 64), 8)
    assert p.max_coeff_diff(salem_g(8).padded(8)) < 1e-12
    c = analyze(GridFunction(16, np.full(16, 3.0 + 0j)), 3)
    assert c.coeff(0) == pytest.approx(3.0)
    assert np.max(np.abs(c.coeffs[[0, 1, 2, 4, 5, 6]])) < 1e-15
    t = 2 * np.pi * np.arange(8) / 8
    cos = analyze(GridFunction(8, np.cos(t).astype(complex)), 1)
    assert cos.max_coeff_diff(TrigPoly([0.5, 0, 0.5])) < 1e-15
    with pytest.raises(DegreeTooLargeError):
        analyze(GridFunction(8, np.zeros(8, complex)), 4)


@pytest.mark.parametrize("K", [0, 1, 5, 31, 200])
def test_roundtrip(K):
    p = random_trig_poly(K, 7 * K + 1)
    for M in (grid_size(K), 1 << (2 * K + 1).bit_length()):
        assert analyze(synthesize(p, M), K).max_coeff_diff(p) <= 1e-12


def test_grid_size_and_error_factor():
    assert grid_size(0) == 8
    assert grid_size(1) == 32
    assert grid_size(8) == 256  # 8 * 17 = 136
    for K in (1, 10, 100, 1000):
        assert grid_error_factor(K, grid_size(K)) < 0.02


def test_evaluate_matches_synthesize():
    p = random_trig_poly(12, 3)
    M = 64
    t = 2 * np.pi * np.arange(M) / M
    assert np.max(np.abs(evaluate(p, t) - synthesize(p, M).samples)) < 1e-13
    assert np.abs(p(0.3) - evaluate(p, np.array([0.3]))[0]) < 1e-15


# -- partial sums ------------------------------------------------------------
def test_partial_sum_examples():
    assert partial_sum(exponential(5), 4).is_zero()
    assert partial_sum(exponential(5), 5) == exponential(5)
    s = partial_sum(modulate(salem_g(2), 2), 2)
    assert s.trimmed().items() == [(1, 0.25j)]
    with pytest.raises(DomainError):
        partial_sum(exponential(1), -1)


def test_partial_sum_asym_examples():
    p = random_trig_poly(6, 2)
    assert partial_sum_asym(p, 6, 6) == partial_sum(p, 6)
    assert partial_sum_asym(exponential(1) + exponential(-1), 0, 1) == exponential(1)
    q = modulate(salem_g(4), 4)
    r = partial_sum_asym(q, 0, 8)
    # g_4 has degree 3, so the shifted support is {1, 2, 3, 5, 6, 7}
    assert sorted(k for k, _ in r.items()) == [1, 2, 3, 5, 6, 7]
    assert r == q


def test_partial_sum_projection():
    p = random_trig_poly(15, 4)
    for N in range(0, 18):
        assert partial_sum(partial_sum(p, N), N) == partial_sum(p, N)
        for M in (0, 3, 9, 20):
            assert partial_sum(partial_sum(p, N), M) == partial_sum(p, min(N, M))


# -- multiply, modulate, derivative ------------------------------------------
def test_multiply_examples():
    p = random_trig_poly(5, 1)
    assert multiply(p, exponential(0)) == p
    assert multiply(exponential(3), exponential(-7)) == exponential(-4)
    prod = multiply(exponential(2), salem_g(2)).trimmed()
    assert prod.items() == [(1, 0.25j), (3, -0.25j)]


def test_multiply_fft_path_matches_direct():
    p, q = random_trig_poly(150, 1), random_trig_poly(90, 2)
    direct = TrigPoly(np.convolve(p.coeffs, q.coeffs))
    assert multiply(p, q).max_coeff_diff(direct) < 1e-13


def test_modulate_examples():
    p = random_trig_poly(4, 8)
    assert modulate(p, 0) == p
    assert modulate(exponential(1), 3) == exponential(4)
    assert modulate(salem_g(2), 2) == multiply(exponential(2), salem_g(2))
    assert modulate(p, -5) == multiply(exponential(-5), p)


def test_derivative_examples():
    assert derivative(exponential(0)).is_zero()
    assert derivative(exponential(6)) == 6j * exponential(6)


def test_translate_and_shift_difference():
    p = random_trig_poly(7, 5)
    t = np.linspace(0, 6, 13)
    assert np.allclose(translate(p, 1.1)(t), p(t - 1.1), atol=1e-13)
    assert np.allclose(shift_difference(p, 0.4)(t), p(t + 0.4) - p(t), atol=1e-13)


# -- sup norm ------------------------------------------------------------------
def test_sup_norm_examples():
    assert sup_norm(exponential(17)) == pytest.approx(1.0, abs=1e-15)
    assert sup_norm(3 * exponential(0)) == 3.0
    for N in (1, 5, 40):
        assert sup_norm(dirichlet(N)) == pytest.approx(2 * N + 1, rel=1e-14)
    assert sup_norm(TrigPoly.zero(3)) == 0.0


def test_sup_norm_off_grid_maximum():
    # maximum of |1 + e^{i(t - a)}| is 2 at t = a, generally off-grid
    a = 0.123456789
    p = exponential(0) + translate(exponential(1), a)
    assert sup_norm(p) == pytest.approx(2.0, rel=1e-12)


def test_sup_norm_against_dense_evaluation():
    for s in range(20):
        p = random_trig_poly(1 + 3 * s, 40 + s)
        t = np.linspace(0, 2 * np.pi, 200_001)
        dense = np.max(np.abs(p(t)))
        v = sup_norm(p)
        assert v >= dense * (1 - 1e-9)
        assert v <= dense * (1 + 1e-6)


def test_refined_max_prunes():
    calls = []

    def refine(i):
        calls.append(i)
        return [1.0, 5.0, 2.0, 4.97][i]

    # 4.97 / 0.99 > 5 must be refined; 2 / 0.99 < 5 must not
    best, arg = refined_max(np.array([1.0, 5.0, 2.0, 4.97]), 0.01, refine)
    assert (best, arg) == (5.0, 1)
    assert calls == [1, 3]
    assert refined_max(np.array([]), 0.1, refine) == (0.0, -1)


# -- coefficient files -----------------------------------------------------------
def test_coefficient_file_roundtrip(tmp_path):
    p = random_trig_poly(9, 3)
    path = tmp_path / "p.csv"
    write_coefficients(p, path, comment="fixture\nsecond line")
    assert path.read_text().startswith("# fixture\n# second line\n")
    assert read_coefficients(path) == p


def test_coefficient_file_unordered_and_errors(tmp_path):
    path = tmp_path / "a.csv"
    path.write_text("# comment\n2,0,1\n\n-1,0.5,0\n")
    p = read_coefficients(path)
    assert p.coeff(2) == 1j and p.coeff(-1) == 0.5
    path.write_text("1,1,0\n1,2,0\n")
    with pytest.raises(CoefficientFileError, match="duplicate"):
        read_coefficients(path)
    path.write_text("1,1\n")
    with pytest.raises(CoefficientFileError):
        read_coefficients(path)
    path.write_text("x,1,0\n")
    with pytest.raises(CoefficientFileError):
        read_coefficients(path)
    path.write_text("1,nan,0\n")
    with pytest.raises(CoefficientFileError):
        read_coefficients(path)
