import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gtlab  # noqa: F401  registers phi_multi
from gtlab import calculus, matcore, tracefn
from gtlab.errors import DimensionError, NotPositiveDefiniteError, UnknownFormError

from conftest import random_hermitian, random_pd

mpmath.mp.dps = 50
positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False)
real = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def _mp_dd_log(a, b):
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    if a == b:
        return 1 / a
    return (mpmath.log(a) - mpmath.log(b)) / (a - b)


def _mp_dd_exp(a, b):
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    if abs(a - b) < mpmath.mpf("1e-30"):
        return mpmath.exp((a + b) / 2)
    return (mpmath.exp(a) - mpmath.exp(b)) / (a - b)


@settings(max_examples=300, deadline=None)
@given(positive, positive)
def test_dd_log_against_high_precision(a, b):
    ref = float(_mp_dd_log(a, b))
    assert float(calculus.dd_log(a, b)) == pytest.approx(ref, rel=1e-14)


@settings(max_examples=300, deadline=None)
@given(positive, st.floats(min_value=-1e-3, max_value=1e-3))
def test_dd_log_near_diagonal(a, frac):
    b = a * (1.0 + frac)
    ref = float(_mp_dd_log(a, b))
    assert float(calculus.dd_log(a, b)) == pytest.approx(ref, rel=1e-14)


@settings(max_examples=300, deadline=None)
@given(real, real)
def test_dd_exp_against_high_precision(a, b):
    ref = float(_mp_dd_exp(a, b))
    assert float(calculus.dd_exp(a, b)) == pytest.approx(ref, rel=1e-13)


def test_dd_diagonal_values():
    assert float(calculus.dd_log(4.0, 4.0)) == 0.25
    assert float(calculus.dd_exp(1.0, 1.0)) == pytest.approx(np.e, rel=1e-15)
    assert float(calculus.dd_log(1.0, 2.0)) == pytest.approx(np.log(2.0), rel=1e-15)


def test_frechet_log_at_identity_is_identity_map(rs):
    b = random_hermitian(np.random.default_rng(1), 4)
    assert rel(calculus.frechet_log(np.eye(4), b), b) <= 1e-15


def test_frechet_log_offdiagonal_example():
    e12 = np.array([[0.0, 1.0], [0.0, 0.0]])
    out = calculus.frechet_log(np.diag([1.0, 2.0]), e12)
    np.testing.assert_allclose(out, np.log(2.0) * e12, atol=1e-15)
    quad = calculus.frechet_log_quadrature(np.diag([1.0, 2.0]), e12)
    np.testing.assert_allclose(quad, np.log(2.0) * e12, atol=1e-8)


@pytest.mark.parametrize("seed", range(10))
def test_frechet_log_commuting_direction(seed):
    # for B commuting with A, d log(A) B = A^-1 B
    rng = np.random.default_rng(seed)
    a = random_pd(rng, 4)
    b = a @ a - 2 * a
    assert rel(calculus.frechet_log(a, b), np.linalg.solve(a, b)) <= 1e-12


def test_frechet_log_rejects_bad_input():
    with pytest.raises(NotPositiveDefiniteError):
        calculus.frechet_log(np.diag([1.0, -1.0]), np.eye(2))
    with pytest.raises(DimensionError):
        calculus.frechet_log(np.eye(2), np.eye(3))


def test_quadrature_examples():
    np.testing.assert_allclose(calculus.frechet_log_quadrature(np.eye(2), np.eye(2)), np.eye(2), atol=1e-8)
    # scalar: ln(2)' ... d log(2) 3 = 3/2
    val = calculus.frechet_log_quadrature([[2.0]], [[3.0]])
    assert val[0, 0].real == pytest.approx(1.5, abs=1e-8)


@pytest.mark.parametrize("seed", range(20))
def test_quadrature_agrees_with_closed_form(seed):
    rng = np.random.default_rng(seed)
    a = random_pd(rng, 4, spread=3.4)
    b = random_hermitian(rng, 4)
    assert rel(calculus.frechet_log_quadrature(a, b), calculus.frechet_log(a, b)) <= calculus.QUAD_TOL


def test_quadrature_degrades_at_high_condition():
    a = np.diag([1.0, 1e6])
    b = np.ones((2, 2))
    err = rel(calculus.frechet_log_quadrature(a, b), calculus.frechet_log(a, b))
    assert err > calculus.QUAD_TOL


@pytest.mark.parametrize("seed", range(20))
def test_frechet_log_central_differences(seed):
    rng = np.random.default_rng(seed)
    a = random_pd(rng, 3)
    b = random_hermitian(rng, 3)
    eps = 1e-5 * matcore.operator_norm(a) / matcore.operator_norm(b)
    fd = (matcore.matrix_log(a + eps * b) - matcore.matrix_log(a - eps * b)) / (2 * eps)
    assert rel(calculus.frechet_log(a, b), fd) <= 1e-4


def test_frechet_exp_examples():
    d = random_hermitian(np.random.default_rng(3), 3)
    assert rel(calculus.frechet_exp(np.zeros((3, 3)), d), d) <= 1e-15
    assert calculus.frechet_exp([[1.0]], [[2.0]])[0, 0].real == pytest.approx(2 * np.e, rel=1e-15)


@pytest.mark.parametrize("seed", range(20))
def test_inverse_identity(seed):
    rng = np.random.default_rng(seed)
    c = random_hermitian(rng, 4, rng.uniform(0.1, 4.0))
    d = random_hermitian(rng, 4)
    back = calculus.frechet_log(matcore.matrix_exp(c), calculus.frechet_exp(c, d))
    assert rel(back, d) <= 1e-9


def test_q_form_examples():
    assert calculus.q_form([[2.0]], [[3.0]]) == pytest.approx(4.5, rel=1e-15)
    h = np.array([[1.0, 2j], [0.5, -1.0]])
    assert calculus.q_form(np.eye(2), h) == pytest.approx(np.linalg.norm(h) ** 2, rel=1e-15)
    assert calculus.q_form_oracle([[2.0]], [[3.0]]) == pytest.approx(4.5, rel=1e-8)


@pytest.mark.parametrize("seed", range(20))
def test_q_form_matches_trace_definition(seed):
    rng = np.random.default_rng(seed)
    x = random_pd(rng, 4)
    h = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    direct = np.trace(h.conj().T @ calculus.frechet_log(x, h)).real
    assert calculus.q_form(x, h) == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_q_form_properties(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 9))
    x1, x2 = random_pd(rng, n), random_pd(rng, n)
    h1 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h2 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q1, q2 = calculus.q_form(x1, h1), calculus.q_form(x2, h2)
    assert q1 >= -1e-12
    s = rng.uniform(0.1, 10.0)
    assert calculus.q_form(s * x1, s * h1) == pytest.approx(s * q1, rel=1e-10)
    mid = calculus.q_form((x1 + x2) / 2, (h1 + h2) / 2)
    assert mid <= (q1 + q2) / 2 + 1e-10 * (1 + q1 + q2)


def test_dq_equality_on_ray():
    # (y, k) proportional to (x, h): quotient equals Q(y, k) exactly
    x = np.diag([1.0, 3.0])
    h = np.array([[1.0, 1.0], [0.0, 2.0]])
    rep = calculus.check_dq_inequality(x, h, 2 * x, 2 * h)
    assert rep.passed
    assert abs(rep.slack) <= 1e-12 * rep.rhs


def test_dq_scalar_example():
    # Q(1, 0) = 0, Q(2, 1) = 1/2, Q(1, 1) = 1
    rep = calculus.check_dq_inequality([[1.0]], [[0.0]], [[1.0]], [[1.0]], t_grid=(1.0,))
    assert rep.lhs == pytest.approx(0.5, rel=1e-15)
    assert rep.rhs == pytest.approx(1.0, rel=1e-15)
    assert rep.passed


@pytest.mark.parametrize("seed", range(20))
def test_dq_random(seed):
    rng = np.random.default_rng(seed)
    x, y = random_pd(rng, 3), random_pd(rng, 3)
    h, k = random_hermitian(rng, 3), random_hermitian(rng, 3)
    assert calculus.check_dq_inequality(x, h, y, k).passed


def test_dq_rejects_bad_t():
    with pytest.raises(ValueError):
        calculus.check_dq_inequality(np.eye(2), np.eye(2), np.eye(2), np.eye(2), t_grid=(0.0,))


def test_quotient_q_matches_dq():
    rng = np.random.default_rng(7)
    x, y = random_pd(rng, 3), random_pd(rng, 3)
    h, k = random_hermitian(rng, 3), random_hermitian(rng, 3)
    a = calculus.check_dq_inequality(x, h, y, k)
    b = calculus.check_homogeneous_convex_quotient("Q", (x, h), (y, k))
    assert (a.lhs, a.rhs) == (b.lhs, b.rhs)


def test_quotient_phi_multi_linear_case():
    # k=1, H=I, L=0: phi(A) = Tr A is linear, quotient is an equality
    spec = tracefn.PhiSpec(tracefn.ContractionTuple([np.eye(2)]))
    a = [np.diag([1.0, 2.0])]
    d = [np.diag([3.0, 0.5])]
    rep = calculus.check_homogeneous_convex_quotient("phi_multi", a, d, spec=spec)
    assert rep.passed
    assert abs(rep.slack) <= 1e-12 * abs(rep.rhs)


def test_quotient_unknown_form():
    with pytest.raises(UnknownFormError):
        calculus.check_homogeneous_convex_quotient("nope", None, None)
