import numpy as np
import pytest

from ucfourier import kernels
from ucfourier.constructions import random_trig_poly, salem_g
from ucfourier.trigpoly import (
    TrigPoly,
    grid_size,
    multiply,
    partial_sum,
    partial_sum_asym,
    synthesize,
)

BACKENDS = kernels.available_backends()
both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def _grid_max(p, M):
    return float(np.max(np.abs(synthesize(p, M).samples)))


def test_backend_selection():
    assert kernels.BACKEND in BACKENDS
    assert "python" in BACKENDS
    with pytest.raises(ValueError):
        kernels.scan_partial_sums(np.ones(3), 8, backend="fortran")


def test_unit_roots_table():
    E = kernels.unit_roots(16)
    assert E[4] == pytest.approx(1j)
    assert not E.flags.writeable


@pytest.mark.parametrize("backend", BACKENDS)
def test_scan_partial_sums_matches_direct(backend):
    p = random_trig_poly(9, 1)
    M = grid_size(9)
    got = kernels.scan_partial_sums(p.coeffs, M, backend=backend)
    want = [_grid_max(partial_sum(p, N).padded(9), M) for N in range(10)]
    assert np.max(np.abs(got - want)) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
def test_scan_asym_matches_direct(backend):
    p = random_trig_poly(5, 2)
    M = grid_size(5)
    got = kernels.scan_asym(p.coeffs, M, 5, 5, backend=backend)
    for N in range(6):
        for Mp in range(6):
            want = _grid_max(partial_sum_asym(p, N, Mp).padded(5), M)
            assert got[N, Mp] == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_scan_commutator_matches_direct(backend):
    m, f = salem_g(4), random_trig_poly(6, 3)
    mf = multiply(m, f)
    M = grid_size(m.degree + f.degree)
    mgrid = synthesize(m, M).samples
    got = kernels.scan_commutator(mgrid, f.coeffs, mf.coeffs, 12, backend=backend)
    for N in range(13):
        q = multiply(m, partial_sum(f, N)) - partial_sum(mf, N)
        assert got[N] == pytest.approx(_grid_max(q.padded(mf.degree), M), abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_shift_sup_and_horner(backend):
    x = np.exp(1j * np.arange(16) * 0.7)
    got = kernels.shift_sup(x, 8, backend=backend)
    assert got[0] == 0
    assert got[3] == pytest.approx(np.max(np.abs(np.roll(x, -3) - x)))
    p = random_trig_poly(7, 4)
    th = np.linspace(-3, 3, 11)
    assert np.max(np.abs(kernels.horner(p.coeffs, th, backend=backend) - p(th))) < 1e-13


@pytest.mark.parametrize("backend", BACKENDS)
def test_dini_panels_trivial_cases(backend):
    # constant: zero integrand
    c = TrigPoly([2.0]).coeffs
    edges = np.array([-np.pi, 0.0, np.pi])
    got = kernels.dini_panels(c, np.array([0.3]), edges, np.array([0, 3]), 1e-8, backend=backend)
    assert got[0] == 0
    # e_1: |e^{iu} - 1| / |u| = |2 sin(u/2)| / |u|, independent of t
    e1 = TrigPoly([0, 0, 1]).coeffs
    ts = np.array([0.0, 1.0])
    edges = np.array([-np.pi, 0.0, np.pi, -np.pi, 0.0, np.pi])
    got = kernels.dini_panels(e1, ts, edges, np.array([0, 3, 6]), 1e-10, backend=backend)
    assert got[0] == pytest.approx(4 * 1.3707621681544884, abs=1e-8)
    assert got[1] == pytest.approx(got[0], abs=1e-9)


@both
def test_backends_agree():
    p = random_trig_poly(40, 9)
    M = grid_size(40)
    a, b = BACKENDS
    np.testing.assert_allclose(kernels.scan_partial_sums(p.coeffs, M, backend=a),
                               kernels.scan_partial_sums(p.coeffs, M, backend=b), atol=1e-12)
    np.testing.assert_allclose(kernels.scan_asym(p.coeffs, M, 6, 9, backend=a),
                               kernels.scan_asym(p.coeffs, M, 6, 9, backend=b), atol=1e-12)
    m = salem_g(8)
    mf = multiply(m, p)
    Mm = grid_size(mf.degree)
    mg = synthesize(m, Mm).samples
    np.testing.assert_allclose(kernels.scan_commutator(mg, p.coeffs, mf.coeffs, 60, backend=a),
                               kernels.scan_commutator(mg, p.coeffs, mf.coeffs, 60, backend=b),
                               atol=1e-12)
    x = synthesize(p, M).samples
    np.testing.assert_allclose(kernels.shift_sup(x, M // 2, backend=a),
                               kernels.shift_sup(x, M // 2, backend=b), atol=1e-12)
    th = np.linspace(0, 7, 101)
    np.testing.assert_allclose(kernels.horner(p.coeffs, th, backend=a),
                               kernels.horner(p.coeffs, th, backend=b), atol=1e-12)
    ts = np.array([0.1, 2.0])
    edges = np.concatenate([np.linspace(-np.pi, np.pi, 9)] * 2)
    off = np.array([0, 9, 18])
    np.testing.assert_allclose(kernels.dini_panels(p.coeffs, ts, edges, off, 1e-8, backend=a),
                               kernels.dini_panels(p.coeffs, ts, edges, off, 1e-8, backend=b),
                               atol=1e-7)
