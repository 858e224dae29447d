"""Circle means, area norms, and coefficient functionals."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman.analytic import (AnalyticFunction, bergman_norm, binomial_kernel,
                              differentiate, dirichlet_norm, hardy_mean,
                              hardy_norm_poly, log_kernel, m_infinity,
                              mixed_norm, mixed_norm_sup,
                              modulus_of_continuity, parse_function_spec,
                              partial_sum, random_function)
from bergman.errors import DomainError
from bergman.weights import const_weight, moment_radial, std_weight

# round to avoid coefficients so tiny that |f|^p underflows to zero
coeff_lists = st.lists(st.floats(min_value=-2.0, max_value=2.0)
                       .map(lambda x: round(x, 3)),
                       min_size=1, max_size=12)


# --------------------------------------------------------------------------
# circle means

def test_hardy_mean_one_plus_z():
    # M_4(1, 1+z)^4 = (1/2pi) integral of (2 + 2cos t)^2 dt = 6
    f = AnalyticFunction([1.0, 1.0])
    assert hardy_mean(f, 4, 1.0) == pytest.approx(6.0 ** 0.25, rel=1e-12)


def test_hardy_mean_monomial_power():
    # M_p(r, z^m) = r^m for every p
    f = AnalyticFunction([0, 0, 0, 1.0])
    for p in (1.0, 1.5, 2.0, 7.0):
        assert hardy_mean(f, p, 0.8) == pytest.approx(0.8 ** 3, rel=1e-11)


@given(coeff_lists, st.floats(min_value=0.05, max_value=0.99))
@settings(max_examples=40, deadline=None)
def test_hardy_mean_parseval(coeffs, r):
    f = AnalyticFunction(coeffs)
    expect = math.sqrt(sum(abs(a) ** 2 * r ** (2 * n)
                           for n, a in enumerate(coeffs)))
    assert hardy_mean(f, 2, r) == pytest.approx(expect, rel=1e-9, abs=1e-12)


@given(coeff_lists)
@settings(max_examples=30, deadline=None)
def test_means_monotone_in_p_and_r(coeffs):
    f = AnalyticFunction(coeffs)
    m_a = hardy_mean(f, 1.5, 0.5)
    m_b = hardy_mean(f, 3.0, 0.5)
    assert m_a <= m_b * (1.0 + 1e-9)
    assert hardy_mean(f, 2, 0.3) <= hardy_mean(f, 2, 0.8) * (1.0 + 1e-9)


def test_m_infinity_positive_coeffs():
    # nonnegative coefficients peak on the positive axis
    f = AnalyticFunction([1.0, 2.0, 0.5])
    assert m_infinity(f, 0.9) == pytest.approx(f(0.9).real, rel=1e-9)


def test_hardy_norm_poly_is_boundary_mean():
    f = AnalyticFunction([1.0, 1.0])
    assert hardy_norm_poly(f, 4) == pytest.approx(hardy_mean(f, 4, 1.0),
                                                  rel=1e-10)


# --------------------------------------------------------------------------
# area norms

def test_bergman_norm_monomial_moment(w_std_m05):
    # ||z^n||_2^2 = 2 * omega_n for a probability weight
    for n in (0, 1, 5, 12):
        f = AnalyticFunction(np.eye(1, n + 1, n)[0])
        expect = math.sqrt(2.0 * moment_radial(w_std_m05, n))
        assert float(bergman_norm(f, 2, w_std_m05)) == pytest.approx(
            expect, rel=1e-10)


def test_mixed_norm_p2_coefficient_sum(w_linear, small_corpus):
    # no factor r in the mixed convention: the 2n-th plain moments appear
    from bergman.weights import moment_plain
    for f in small_corpus[:4]:
        a = float(mixed_norm(f, 2, 2, w_linear)) ** 2
        b = sum(abs(c) ** 2 * moment_plain(w_linear, 2 * n)
                for n, c in enumerate(f.coefficients))
        assert a == pytest.approx(b, rel=1e-8)


@given(coeff_lists, st.floats(min_value=0.1, max_value=3.0))
@settings(max_examples=25, deadline=None)
def test_bergman_norm_homogeneous(coeffs, c):
    w = const_weight().normalized()
    f = AnalyticFunction(coeffs)
    base = float(bergman_norm(f, 2, w))
    assert float(bergman_norm(f * c, 2, w)) == pytest.approx(
        c * base, rel=1e-9, abs=1e-12)


def test_mixed_norm_sup_truncated_cauchy_kernel(w_const):
    # sup_r M_2(r, 1/(1-z)) * tail(r)^(1/2) = 1 for the flat weight
    f = binomial_kernel(1.0, 256)
    assert float(mixed_norm_sup(f, 2, w_const, beta=0.5)) == pytest.approx(
        1.0, rel=1e-9)


def test_dirichlet_norm_log_kernel():
    # Dirichlet norm of sum z^k/k is the square root of the harmonic number
    h = sum(1.0 / k for k in range(1, 513))
    assert float(dirichlet_norm(log_kernel(512))) == pytest.approx(
        math.sqrt(h), rel=1e-13)


# --------------------------------------------------------------------------
# modulus of continuity

def test_modulus_monomial_exact():
    for m in (1, 3, 8):
        f = AnalyticFunction(np.eye(1, m + 1, m)[0])
        for h in (0.01, 0.1, 1.0):
            assert modulus_of_continuity(f, 2, h) == pytest.approx(
                2.0 * abs(math.sin(m * h / 2.0)), rel=1e-10)


@given(coeff_lists, st.floats(min_value=0.01, max_value=0.5),
       st.floats(min_value=0.01, max_value=0.5))
@settings(max_examples=30, deadline=None)
def test_modulus_subadditive(coeffs, h1, h2):
    f = AnalyticFunction(coeffs)
    a = modulus_of_continuity(f, 2, h1 + h2)
    b = modulus_of_continuity(f, 2, h1) + modulus_of_continuity(f, 2, h2)
    assert a <= b * (1.0 + 1e-9) + 1e-12


# --------------------------------------------------------------------------
# coefficient plumbing

def test_differentiate_shifts_coefficients():
    f = AnalyticFunction([5.0, 1.0, 2.0, 3.0])
    g = differentiate(f)
    assert np.allclose(g.coefficients, [1.0, 4.0, 9.0])


def test_partial_sum_window():
    # half-open window: n1 <= k < n2
    f = AnalyticFunction(np.arange(10.0))
    g = partial_sum(f, 3, 6)
    assert g.coefficients[3] == 3.0 and g.coefficients[5] == 5.0
    assert np.all(g.coefficients[:3] == 0) and g.degree == 5


def test_block_reconstruction():
    f = AnalyticFunction(np.arange(1.0, 9.0))
    total = partial_sum(f, 0, 4) + partial_sum(f, 4, 8)
    assert np.allclose(total.coefficients, f.coefficients)


def test_random_function_deterministic():
    a = random_function(32, 9, dist="sym")
    b = random_function(32, 9, dist="sym")
    assert np.array_equal(a.coefficients, b.coefficients)
    c = random_function(32, 10, dist="sym")
    assert not np.array_equal(a.coefficients, c.coefficients)


def test_binomial_kernel_coefficients():
    from scipy.special import gamma
    f = binomial_kernel(0.5, 16)
    expect = [gamma(k + 0.5) / (gamma(0.5) * gamma(k + 1)) for k in range(5)]
    assert np.allclose(f.coefficients[:5], expect, rtol=1e-12)


def test_parse_function_spec_grammar():
    f = parse_function_spec("poly(1,0.5,-2)")
    assert np.allclose(f.coefficients, [1.0, 0.5, -2.0])
    g = parse_function_spec("logk(deg=64)")
    assert g.degree == 64 and g.coefficients[1] == pytest.approx(1.0)
    h = parse_function_spec("rand(deg=8,seed=3)")
    assert h.degree <= 8
    with pytest.raises(DomainError):
        parse_function_spec("nosuch(1)")


def test_evaluation_horner_consistency():
    f = AnalyticFunction([1.0, -2.0, 0.5])
    z = 0.3 + 0.4j
    assert f(z) == pytest.approx(1.0 - 2.0 * z + 0.5 * z * z, rel=1e-14)
