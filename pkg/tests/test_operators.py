"""Hilbert-type operators: moments, matrix action, Hilbert-Schmidt sums."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman.analytic import AnalyticFunction, dirichlet_norm, random_function
from bergman.errors import DomainError, WellDefinednessError
from bergman.operators import (OperatorSetting, apply_classical,
                               apply_generalized, apply_sublinear,
                               hilbert_schmidt_partial, hs_limit_estimate,
                               lp_hat_norm, moments, moments_profile,
                               operator_norm_lower, phi_r_profile, suma_ratio,
                               zhu_ratio)
from bergman.operators import test_function_Q as q_test_function
from bergman.decomposition import partition

coeff_lists = st.lists(st.floats(min_value=-2.0, max_value=2.0)
                       .map(lambda x: round(x, 3)),
                       min_size=1, max_size=10)


# --------------------------------------------------------------------------
# moments

def test_moments_monomial_exact():
    f = AnalyticFunction([0, 0, 1.0])        # z^2
    mu = moments(f, 6)
    assert np.allclose(mu, [1.0 / (k + 3) for k in range(7)], rtol=1e-14)


def test_moments_profile_log_density():
    # mu_0 of 1/(1 - t/2) is 2 log 2
    mu = moments_profile(lambda t: 1.0 / (1.0 - 0.5 * np.asarray(t)), 2)
    assert mu[0] == pytest.approx(2.0 * math.log(2.0), rel=1e-10)


def test_moments_profile_agrees_with_coefficients():
    f = AnalyticFunction([1.0, -0.5, 0.25])
    mu_exact = moments(f, 8)
    mu_quad = moments_profile(lambda t: np.real(f(t)), 8)
    assert np.allclose(mu_quad, np.real(mu_exact), rtol=1e-9)


# --------------------------------------------------------------------------
# operator action

def test_classical_hilbert_matrix_columns():
    # column n of the matrix is 1/(n+k+1), exactly
    for n in (0, 3, 17):
        f = AnalyticFunction(np.eye(1, n + 1, n)[0])
        img = apply_classical(f, 32)
        expect = [1.0 / (n + k + 1.0) for k in range(33)]
        assert np.allclose(np.real(img.coefficients), expect, atol=1e-14)


def test_generalized_reduces_to_classical(w_std_m05):
    from bergman.analytic import log_kernel
    setting = OperatorSetting(2, 2, w_std_m05)
    f = AnalyticFunction([1.0, 0.5, 0.25])
    a = apply_generalized(log_kernel(64), f, 32, setting)
    b = apply_classical(f, 32)
    assert np.allclose(a.coefficients, b.coefficients[:len(a.coefficients)],
                       rtol=1e-13)


@given(coeff_lists, coeff_lists, st.floats(min_value=-2.0, max_value=2.0)
       .map(lambda x: round(x, 3)))
@settings(max_examples=25, deadline=None)
def test_generalized_linear_in_argument(c1, c2, t):
    w = __import__("bergman.weights", fromlist=["std_weight"]) \
        .std_weight(-0.5).normalized()
    g = AnalyticFunction([0.0, 1.0, 0.5, 0.25])
    setting = OperatorSetting(2, 2, w)
    f1, f2 = AnalyticFunction(c1), AnalyticFunction(c2)
    lhs = apply_generalized(g, f1 + f2 * t, 8, setting)
    r1 = apply_generalized(g, f1, 8, setting)
    r2 = apply_generalized(g, f2, 8, setting)
    rhs = r1 + r2 * t
    n = max(len(lhs.coefficients), len(rhs.coefficients))
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[:len(lhs.coefficients)] = lhs.coefficients
    b[:len(rhs.coefficients)] = rhs.coefficients
    assert np.allclose(a, b, atol=1e-12)


def test_well_definedness_refusal(w_const, w_std_m05):
    # flat weight fails the tail-integrability condition at p = 2
    setting = OperatorSetting(2, 2, w_const)
    with pytest.raises(WellDefinednessError):
        setting.require_well_defined()
    OperatorSetting(2, 2, w_std_m05).require_well_defined()


def test_sublinear_dominates_pointwise():
    f = AnalyticFunction([1.0, -1.0, 0.5])
    g = AnalyticFunction(np.abs(f.coefficients))
    x = 0.5
    img = apply_classical(g, 256)
    assert apply_sublinear(f, x) >= abs(apply_classical(f, 256)(x)) - 1e-12
    # equality for nonnegative coefficients
    assert apply_sublinear(g, x) == pytest.approx(float(np.real(img(x))),
                                                  rel=1e-8)


# --------------------------------------------------------------------------
# profile norms

def test_lp_hat_norm_flat_profile(w_const):
    # phi = 1: integral of tail = integral of (1-t) dt = 1/2
    val = lp_hat_norm(lambda t: np.ones_like(np.asarray(t)), 2, w_const)
    assert float(val) == pytest.approx(math.sqrt(0.5), rel=1e-11)


def test_lp_hat_norm_divergence(w_const):
    # phi(t) = (1-t)^(-3/2) against tail (1-t): local exponent -2 diverges
    val = lp_hat_norm(lambda t: (1.0 - np.asarray(t)) ** -1.5, 2, w_const)
    assert val.divergent
    assert val.diagnostics["exponent"] == pytest.approx(2.0, abs=1e-6)


def test_phi_r_profile_support(w_std_m05):
    phi, edge = phi_r_profile(w_std_m05, 0.5, 2)
    assert edge == 0.5
    t = np.array([0.1, 0.49, 0.5, 0.9])
    v = phi(t)
    assert v[0] == 0.0 and v[1] == 0.0 and v[2] > 0 and v[3] > v[2]


# --------------------------------------------------------------------------
# Hilbert-Schmidt sums

def test_hs_partial_monotone(w_std_m05):
    g = AnalyticFunction([0.0, 0.0, 1.0])
    s = hilbert_schmidt_partial(g, w_std_m05, 500)
    assert len(s) == 501
    assert np.all(np.diff(s) > 0)


def test_hs_limit_close_to_dirichlet(w_std_m05):
    g = AnalyticFunction([0.0, 0.0, 1.0])
    s = hilbert_schmidt_partial(g, w_std_m05, 2000)
    est, verdict = hs_limit_estimate(s)
    assert verdict == "finite"
    rhs = float(dirichlet_norm(g)) ** 2
    assert 1.0 / 8.0 < est / rhs < 8.0


def test_hs_log_symbol_diverges(w_std_m05):
    from bergman.analytic import log_kernel
    s = hilbert_schmidt_partial(log_kernel(4096), w_std_m05, 1000)
    est, verdict = hs_limit_estimate(s)
    assert verdict == "divergent" and est == math.inf


def test_hs_zero_symbol(w_std_m05):
    s = hilbert_schmidt_partial(AnalyticFunction([3.0]), w_std_m05, 50)
    assert np.all(s == 0)


def test_suma_ratio_verdicts(w_std_m05, w_const):
    r = suma_ratio(w_std_m05, 10)
    assert r.verdict == "finite" and 0.1 < float(r) < 10.0
    assert suma_ratio(w_const, 10).divergent


# --------------------------------------------------------------------------
# test functions and lower bounds

def test_zhu_ratio_stable(w_std_m05):
    assert zhu_ratio(w_std_m05, 3.0) < 4.0


def test_q_test_function_shape(w_std_m05):
    # the Q family exists only in the q < p regime
    g = AnalyticFunction([0.0, 1.0])
    setting = OperatorSetting(3, 2, w_std_m05)
    phi, q = q_test_function(g, 0.9, setting, k_max=128)
    assert q.degree <= 128 and np.any(np.abs(q.coefficients) > 0)
    assert float(phi(np.array([0.5]))[0]) > 0.0


def test_operator_norm_lower_positive(w_std_m05):
    setting = OperatorSetting(2, 2, w_std_m05)
    part = partition(w_std_m05, 1.0, 2 ** 12)
    g = AnalyticFunction([0.0, 1.0])
    lb = operator_norm_lower(g, setting, part, n_max=3)
    assert 0.0 < lb < 100.0


def test_moments_rejects_negative_kmax():
    with pytest.raises(DomainError):
        moments(AnalyticFunction([1.0]), -1)
