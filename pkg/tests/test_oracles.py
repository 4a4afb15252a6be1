from __future__ import annotations

import math

import numpy as np
import pytest

from irrlaplace.errors import DomainError, NonConvergent, StepTooCoarse
from irrlaplace.generalized_functions import eval_pointwise, eval_regular_part
from irrlaplace.inversion import Family, LaplaceExpr, invert
from irrlaplace.oracles import GLConfig, gl_differintegral, gl_weights, ml_series_hp
from irrlaplace.special_functions import MLParams, ml_eval


def test_weights_match_binomials():
    w = gl_weights(0.5, 5, dtype=float)
    ref = [(-1) ** k * math.gamma(1.5) / (math.gamma(k + 1) * math.gamma(1.5 - k)) for k in range(6)]
    assert w == pytest.approx(ref, rel=1e-14)


def test_config_validation():
    with pytest.raises(DomainError):
        GLConfig(1.0, 0.5, h=0.3)
    with pytest.raises(DomainError):
        GLConfig(1.0, 0.5, h=1 / 16)
    with pytest.raises(DomainError):
        GLConfig(0.0, 0.5)
    assert GLConfig(2.0, 0.5, h=2 / 64).steps == 64


def test_half_derivative_of_constant():
    r = gl_differintegral(lambda x: np.ones_like(x), GLConfig(1.0, 0.5))
    assert r.value == pytest.approx(1 / math.sqrt(math.pi), abs=1e-7)


def test_identity_and_first_derivative():
    r = gl_differintegral(lambda x: np.exp(-x), GLConfig(1.0, 0.0))
    assert r.value == pytest.approx(math.exp(-1), rel=1e-12)
    r = gl_differintegral(lambda x: x, GLConfig(2.0, 1.0))
    assert r.value == pytest.approx(1.0, abs=1e-10)


def test_integration_order():
    r = gl_differintegral(lambda x: np.ones_like(x), GLConfig(2.0, -1.0))
    assert r.value == pytest.approx(2.0, abs=1e-8)


def test_leading_terms_correction():
    r = gl_differintegral(lambda x: x ** -0.3 + np.exp(-x), GLConfig(1.0, 0.4),
                          leading_terms=[(1.0, -0.3)])
    exact_power = math.gamma(0.7) / math.gamma(0.3)
    smooth = invert(LaplaceExpr(Family.BINOMIAL, 0.4, alpha=1.0, sign=-1, lam=1.0))
    expected = exact_power + eval_regular_part(smooth, 1.0).value
    assert r.value == pytest.approx(expected, abs=max(1e-6, 3 * r.abs_err))
    with pytest.raises(DomainError):
        gl_differintegral(lambda x: x, GLConfig(1.0, 0.5), leading_terms=[(1.0, -1.0)])


def test_step_too_coarse():
    with pytest.raises(StepTooCoarse) as info:
        gl_differintegral(lambda x: np.exp(-x), GLConfig(1.0, 0.5, h=1 / 32, tol=1e-12))
    assert info.value.best is not None


def test_refinement_reduces_error():
    exact = float(ml_eval(MLParams(1.0, 0.5, -1.0)).value)
    errs = []
    for n in (64, 256, 1024):
        r = gl_differintegral(lambda x: np.exp(-x), GLConfig(1.0, 0.5, h=1 / n, richardson=False))
        errs.append(abs(r.value - exact))
    assert errs[0] > errs[1] > errs[2]


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9, 1.5, 2.3])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 5.0])
def test_gl_agrees_with_closed_form(q, t):
    lam = 1.0
    f = invert(LaplaceExpr(Family.BINOMIAL, q, alpha=1.0, sign=-1, lam=lam))
    r = gl_differintegral(lambda x: np.exp(-lam * x), GLConfig(t, q))
    assert eval_pointwise(f, t).value == pytest.approx(r.value, abs=max(1e-4, 3 * r.abs_err))


def test_reference_series():
    assert ml_series_hp(MLParams(1, 1, 1)).value == pytest.approx(math.e, rel=1e-14)
    assert ml_series_hp(MLParams(0.7, 0.3, 0.0)).value == pytest.approx(1 / math.gamma(0.3), rel=1e-15)
    r = ml_series_hp(MLParams(0.5, 1, -2))
    assert r.abs_err <= 1e-14
    assert ml_eval(MLParams(0.5, 1, -2)).value == pytest.approx(r.value, rel=1e-10)


def test_reference_series_reports_non_convergence():
    with pytest.raises(NonConvergent):
        ml_series_hp(MLParams(0.5, 1.0, -30.0), max_terms=50)
