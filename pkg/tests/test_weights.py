"""Radial weights: tails, classification, integrability conditions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergman.errors import DivergentMassError, DomainError
from bergman.weights import (carleson_mass, classify, condition_99, distortion,
                             moment_plain, moment_radial, muckenhoupt,
                             parse_weight, regularity_exponents, std_weight,
                             table_weight, tail, tail_exponent, tail_numeric,
                             u_p_weight)


# --------------------------------------------------------------------------
# parsing and construction

def test_parse_round_trip_families():
    for spec, family in [("const(c=1)", "const"), ("std(alpha=-0.5)", "std"),
                         ("pow(beta=1)", "pow"), ("logpow(beta=2)", "logpow"),
                         ("osc()", "osc")]:
        w = parse_weight(spec)
        assert w.family == family


def test_parse_scale_suffix():
    w = parse_weight("std(alpha=1)*3.5")
    base = std_weight(1.0)
    assert w.tail(0.5) == pytest.approx(3.5 * base.tail(0.5), rel=1e-14)


def test_parse_rejects_divergent_mass():
    with pytest.raises(DivergentMassError):
        parse_weight("std(alpha=-1.5)")


def test_parse_rejects_garbage():
    with pytest.raises(DomainError):
        parse_weight("frobnicate(x=1)")


def test_normalized_has_unit_mass(w_std_1, w_logpow2, w_osc):
    for w in (w_std_1, w_logpow2, w_osc):
        assert w.tail(0.0) == pytest.approx(1.0, rel=1e-12)


# --------------------------------------------------------------------------
# tails: closed forms and numerics

def test_const_tail_linear(w_const):
    for r in np.linspace(0.0, 0.999, 21):
        assert tail(w_const, float(r)) == pytest.approx(1.0 - r, rel=1e-14)


def test_std_tail_closed_form():
    # unnormalized (1-r^2)^1: tail(r) = (2 - 3r + r^3)/3
    w = std_weight(1.0)
    for r in (0.0, 0.3, 0.9, 0.999):
        expect = (2.0 - 3.0 * r + r ** 3) / 3.0
        assert tail(w, r) == pytest.approx(expect, rel=1e-11)


def test_logpow_tail_value(w_logpow2):
    # density ~ (1-r)^{-1} log(e/(1-r))^{-3} integrates to log(e/(1-r))^{-2}/2
    # up to normalization; at 1-r = e^{1-e} the unnormalized tail is 1/e
    from bergman.weights import logpow_weight
    w = logpow_weight(2.0)
    r = 1.0 - math.exp(1.0 - math.e)
    assert tail(w, r) == pytest.approx(1.0 / math.e, rel=1e-12)


def test_tail_numeric_matches_closed(w_std_m05):
    for r in (0.1, 0.7, 0.99, 1.0 - 2.0 ** -20):
        assert tail_numeric(w_std_m05, r) == pytest.approx(
            tail(w_std_m05, r), rel=1e-10)


def test_tail_deep_endpoint_no_underflow(w_std_1):
    u = 2.0 ** -400
    t = w_std_1.tail_u(u)
    assert t > 0 and math.isfinite(math.log(t))


@given(st.floats(min_value=0.0, max_value=0.9999))
@settings(max_examples=50, deadline=None)
def test_tail_monotone_decreasing(r):
    w = std_weight(-0.5).normalized()
    assert tail(w, r) >= tail(w, min(r + 1e-4, 1.0)) - 1e-15


# --------------------------------------------------------------------------
# distortion and classification

def test_osc_distortion_value(w_osc):
    from bergman.weights import osc_weight
    assert distortion(osc_weight(), 0.99) == pytest.approx(
        0.021723145125553962, rel=1e-11)


def test_distortion_scale_invariant(w_std_m05):
    assert distortion(w_std_m05.scaled(17.0), 0.9) == pytest.approx(
        distortion(w_std_m05, 0.9), rel=1e-13)


def test_classify_verdicts(w_std_m05, w_osc, w_logpow2):
    assert classify(w_std_m05).verdict == "Regular"
    assert classify(w_osc).verdict == "Regular"
    assert classify(w_logpow2).verdict == "RapidlyIncreasing"


def test_regularity_exponents(w_const, w_std_1, w_logpow2):
    lo, hi = regularity_exponents(w_const)
    assert (lo, hi) == pytest.approx((1.0, 1.0), abs=1e-9)
    lo, hi = regularity_exponents(w_std_1)
    assert hi == pytest.approx(2.0, abs=1e-6)
    assert lo == pytest.approx(2.0, abs=0.05)
    with pytest.raises(DomainError):
        regularity_exponents(w_logpow2)


def test_tail_exponent_standard():
    # tail of (1-r^2)^alpha behaves like (1-r)^(alpha+1)
    for alpha in (-0.5, 0.0, 1.0, 3.0):
        w = std_weight(alpha).normalized()
        assert tail_exponent(w) == pytest.approx(alpha + 1.0, abs=1e-6)


# --------------------------------------------------------------------------
# integrability conditions

def test_muckenhoupt_std_value(w_std_m05):
    m = muckenhoupt(w_std_m05, 2)
    assert m.verdict == "finite"
    assert m.value == pytest.approx(1.9999991331920044, rel=1e-10)


def test_condition_99_std_value(w_std_m05):
    c = condition_99(w_std_m05, 2)
    assert c.verdict == "finite"
    assert c.value == pytest.approx(2.1531881786469427, rel=1e-9)


def test_muckenhoupt_threshold():
    # std(alpha) lies in M_p exactly for alpha < p - 2
    for p in (2.0, 3.0):
        assert muckenhoupt(std_weight(p - 2.25).normalized(), p).verdict == "finite"
        assert muckenhoupt(std_weight(p - 2.0).normalized(), p).divergent
        assert muckenhoupt(std_weight(p - 1.5).normalized(), p).divergent


def test_muckenhoupt_scale_invariant(w_std_m05):
    a = muckenhoupt(w_std_m05, 2).value
    b = muckenhoupt(w_std_m05.scaled(17.0), 2).value
    assert b == pytest.approx(a, rel=1e-12)


def test_muckenhoupt_requires_p_gt_1(w_const):
    with pytest.raises(DomainError):
        muckenhoupt(w_const, 1.0)


def test_u_p_weight_existence(w_const, w_std_m05):
    # const fails M_2, so u_2 has divergent mass; std(-0.5) is fine
    with pytest.raises(DivergentMassError):
        u_p_weight(w_const, 2)
    up = u_p_weight(w_std_m05, 2)
    assert classify(up).verdict == "Regular"


# --------------------------------------------------------------------------
# moments and Carleson masses

def test_moment_radial_std_beta_function():
    # integral of r^(2n+1)(1-r^2)^alpha dr = B(n+1, alpha+1)/2
    from scipy.special import beta
    w = std_weight(-0.5)
    assert moment_radial(w, 10) == pytest.approx(0.5 * beta(11, 0.5), rel=1e-12)
    assert moment_radial(w, 10) == pytest.approx(0.270260183572877, rel=1e-12)


def test_moment_monotone_decreasing(w_std_1):
    ms = [moment_radial(w_std_1, n) for n in range(20)]
    assert all(a > b > 0 for a, b in zip(ms, ms[1:]))


def test_moment_plain_const(w_const):
    for x in (0.0, 1.0, 4.5):
        assert moment_plain(w_const, x) == pytest.approx(1.0 / (x + 1.0), rel=1e-12)


def test_carleson_mass_value():
    assert carleson_mass(std_weight(1.0), 0.9) == pytest.approx(
        0.00028727467228085285, rel=1e-11)


def test_carleson_mass_monotone(w_std_m05):
    ms = [carleson_mass(w_std_m05, a) for a in (0.0, 0.5, 0.9, 0.99)]
    assert all(a > b > 0 for a, b in zip(ms, ms[1:]))


def test_carleson_mass_total(w_const):
    # S(0) is the whole disc: mass = (1/pi) * integral of r dr = 1/(2 pi)
    assert carleson_mass(w_const, 0.0) == pytest.approx(
        1.0 / (2.0 * math.pi), rel=1e-12)


# --------------------------------------------------------------------------
# table weights

def test_table_weight_tail_piecewise():
    # constant samples extend to a globally constant density 2
    w = table_weight([0.0, 0.5, 0.9], [2.0, 2.0, 2.0])
    assert tail(w, 0.25) == pytest.approx(1.5, rel=1e-12)
    assert tail(w, 0.75) == pytest.approx(0.5, rel=1e-12)
