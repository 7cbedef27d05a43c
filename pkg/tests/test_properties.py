import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ucfourier.multiplier import commutator
from ucfourier.norms import a_norm, c_norm, u_norm, u_norm_asym
from ucfourier.trigpoly import (
    TrigPoly,
    analyze,
    grid_size,
    modulate,
    multiply,
    partial_sum,
    partial_sum_asym,
    sup_norm,
    synthesize,
    translate,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


@st.composite
def polys(draw, max_degree=12):
    K = draw(st.integers(0, max_degree))
    coeffs = draw(st.lists(complexes, min_size=2 * K + 1, max_size=2 * K + 1))
    return TrigPoly(coeffs)


def _scale(p):
    return max(1.0, float(np.max(np.abs(p.coeffs))))


@settings(max_examples=60, deadline=None)
@given(polys())
def test_dft_roundtrip(p):
    assert analyze(synthesize(p, grid_size(p.degree)), p.degree).max_coeff_diff(p) <= 1e-12 * _scale(p)


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(0, 15), st.integers(0, 15))
def test_partial_sums_compose(p, N, M):
    assert partial_sum(partial_sum(p, N), M) == partial_sum(p, min(N, M))
    assert partial_sum_asym(p, N, N) == partial_sum(p, N)
    assert partial_sum_asym(partial_sum_asym(p, N, M), M, N) == partial_sum(p, min(N, M))


@settings(max_examples=40, deadline=None)
@given(polys(8))
def test_norm_chain(p):
    c, u, a = c_norm(p), u_norm(p), a_norm(p)
    tol = 1e-9 * _scale(p)
    assert c <= u + tol
    assert u <= a + tol
    assert u <= u_norm_asym(p) + tol


@settings(max_examples=60, deadline=None)
@given(polys(), st.integers(-20, 20))
def test_modulation_preserves_wiener_and_sup_norm(p, n):
    q = modulate(p, n)
    assert a_norm(q) == a_norm(p)
    assert abs(sup_norm(q) - sup_norm(p)) <= 1e-9 * _scale(p)


@settings(max_examples=40, deadline=None)
@given(polys(8), st.floats(-7, 7))
def test_sup_norm_translation_invariant(p, a):
    assert abs(sup_norm(translate(p, a)) - sup_norm(p)) <= 1e-7 * max(1.0, sup_norm(p))


@settings(max_examples=60, deadline=None)
@given(polys(8), polys(8))
def test_multiply_commutes_and_bounds(p, q):
    pq = multiply(p, q)
    assert pq.max_coeff_diff(multiply(q, p)) <= 1e-12 * _scale(p) * _scale(q)
    assert sup_norm(pq) <= sup_norm(p) * sup_norm(q) * (1 + 1e-9) + 1e-9


@settings(max_examples=40, deadline=None)
@given(polys(6), polys(6), st.integers(0, 14))
def test_commutator_identity(m, f, N):
    lhs = partial_sum(multiply(m, f), N)
    rhs = multiply(m, partial_sum(f, N)) - commutator(m, f, N)
    assert lhs.max_coeff_diff(rhs) <= 1e-12 * _scale(m) * _scale(f)
