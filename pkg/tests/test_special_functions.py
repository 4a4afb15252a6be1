from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from irrlaplace.errors import DomainError
from irrlaplace.oracles import ml_series_hp
from irrlaplace.special_functions import (
    MLParams,
    ml_eval,
    ml_eval_scaled,
    ml_one_param,
    rabotnov_eval,
    rgamma,
)


def test_rgamma_values():
    assert rgamma(0.5) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-15)
    assert rgamma(-0.5) == pytest.approx(-1 / (2 * math.sqrt(math.pi)), rel=1e-15)
    for n in range(0, 20):
        assert rgamma(-float(n)) == 0.0
    assert rgamma(-3.0 + 1e-13) == 0.0
    assert rgamma(-3.0 + 1e-6) != 0.0


def test_rgamma_large_arguments():
    assert rgamma(200.0) == 0.0 or rgamma(200.0) < 1e-300
    assert math.isfinite(rgamma(-170.5))


@pytest.mark.parametrize("alpha,beta,z,expected", [
    (1, 1, 1, math.e),
    (2, 1, -1, math.cos(1)),
    (0.7, 0.7, 0, 1 / math.gamma(0.7)),
    (1, 1, -30, math.exp(-30)),
    (2, 1, -100, math.cos(10)),
    (2, 2, 4, math.sinh(2) / 2),
])
def test_ml_closed_forms(alpha, beta, z, expected):
    r = ml_eval(MLParams(alpha, beta, z))
    assert r.value == pytest.approx(expected, rel=1e-10, abs=1e-14)
    assert r.abs_err <= 1e-10 * max(1, abs(r.value))


def test_ml_half_is_erfc():
    for x in [0.1, 1.0, 3.0, 8.0]:
        expected = float(mpmath.exp(x * x) * mpmath.erfc(x))
        assert ml_eval(MLParams(0.5, 1.0, -x)).value == pytest.approx(expected, rel=1e-10)


def test_ml_z_zero_anchor_is_exact():
    for a, b in [(0.3, -2.5), (1.7, 0.1), (2.5, 3.0)]:
        assert ml_eval(MLParams(a, b, 0.0)).value == rgamma(b)


def test_params_validation():
    with pytest.raises(DomainError):
        MLParams(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        MLParams(1.0, 1.0, math.nan)
    with pytest.raises(DomainError):
        rabotnov_eval(1.0, 0, 1.0, 1.0)
    with pytest.raises(DomainError):
        rabotnov_eval(1.0, 1, 1.0, 0.0)


def test_rabotnov_and_one_param():
    assert rabotnov_eval(1, -1, 1, 1).value == pytest.approx(math.exp(-1), rel=1e-12)
    assert rabotnov_eval(1, 1, 2, 0.5).value == pytest.approx(math.e, rel=1e-12)
    assert ml_one_param(1, -2).value == pytest.approx(math.exp(-2), rel=1e-12)
    assert ml_one_param(2, -4).value == pytest.approx(math.cos(2), rel=1e-12)
    ref = ml_series_hp(MLParams(0.5, 0.5, -1.0)).value
    assert rabotnov_eval(0.5, -1, 1.0, 1.0).value == pytest.approx(ref, rel=1e-10)
    ref = ml_series_hp(MLParams(0.8, 1.0, -1.0)).value
    assert ml_one_param(0.8, -1).value == pytest.approx(ref, rel=1e-10)


def test_scaled_evaluation_matches_unscaled():
    r = ml_eval_scaled(0.8, 1.2, 30.0, shift=40.0)
    plain = ml_eval(MLParams(0.8, 1.2, 30.0))
    assert r.value == pytest.approx(plain.value * math.exp(-40.0), rel=1e-10)
    # far beyond the overflow range only the scaled form is finite
    big = ml_eval_scaled(0.5, 0.5, 40.0, shift=1600.0)
    assert math.isfinite(big.value) and big.value > 0


@settings(max_examples=150, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(-5.0, 5.0), st.floats(-100.0, 10.0))
def test_ml_against_reference_series(alpha, beta, z):
    # the reference series needs about |z|**(1/alpha) terms
    assume(abs(z) ** (1.0 / alpha) <= 200.0)
    r = ml_eval(MLParams(alpha, beta, z))
    ref = ml_series_hp(MLParams(alpha, beta, z), target_tol=1e-13)
    target = 1e-10 * max(1.0, abs(r.value))
    assert abs(r.value - ref.value) <= target
    assert r.abs_err <= target


@settings(max_examples=200, deadline=None)
@given(st.floats(0.3, 2.5), st.floats(-3.0, 3.0), st.floats(-50.0, 5.0))
def test_recurrence_property(alpha, beta, z):
    lhs = ml_eval(MLParams(alpha, beta, z)).value
    rhs = rgamma(beta) + z * ml_eval(MLParams(alpha, alpha + beta, z)).value
    assert abs(lhs - rhs) <= 1e-8 * (1 + abs(lhs))


def test_exponential_and_trig_reductions():
    ts = np.linspace(0, 10, 201)
    for lam in (0.5, 1.0, 2.0):
        err = max(abs(ml_eval(MLParams(1, 1, -lam * t)).value - math.exp(-lam * t)) for t in ts)
        assert err <= 1e-10
    err = max(abs(ml_eval(MLParams(2, 1, -t * t)).value - math.cos(t)) for t in ts)
    assert err <= 1e-10
