"""Shared fixtures: reference weights and small function corpora."""

import numpy as np
import pytest

from bergman.analytic import AnalyticFunction, random_function
from bergman.weights import (const_weight, logpow_weight, osc_weight,
                             pow_weight, std_weight)


@pytest.fixture(scope="session")
def w_const():
    return const_weight().normalized()


@pytest.fixture(scope="session")
def w_linear():
    return pow_weight(1.0).normalized()          # 2(1-r)


@pytest.fixture(scope="session")
def w_std_m05():
    return std_weight(-0.5).normalized()


@pytest.fixture(scope="session")
def w_std_1():
    return std_weight(1.0).normalized()


@pytest.fixture(scope="session")
def w_logpow2():
    return logpow_weight(2.0).normalized()


@pytest.fixture(scope="session")
def w_osc():
    return osc_weight().normalized()


@pytest.fixture(scope="session")
def small_corpus():
    """Mixed small corpus: monomials, low-degree random, a short kernel tail."""
    fns = [AnalyticFunction(np.eye(1, m + 1, m)[0]) for m in (0, 1, 3, 7)]
    fns += [random_function(16, seed, dist="sym") for seed in (0, 1)]
    fns += [random_function(48, 2, dist="unit")]
    return fns
