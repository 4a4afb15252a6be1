from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irrlaplace.errors import DivergentTransform, DomainError
from irrlaplace.generalized_functions import (
    ExpPowerTerm,
    GeneralizedFunction,
    MLTerm,
    PowerTerm,
    ShiftedPowerTerm,
    SingularTerm,
    eval_pointwise,
)
from irrlaplace.inversion import (
    Family,
    LaplaceExpr,
    forward_laplace,
    frac_derivative_power_law,
    invert,
)
from irrlaplace.roundtrip import check_expr, s_points, sample_cases
from irrlaplace.special_functions import rgamma


def binomial(q, alpha=1.0, sign=-1, lam=1.0, mu=1.0):
    return LaplaceExpr(Family.BINOMIAL, q, mu, alpha, sign, lam)


def test_integer_monomial():
    assert invert(LaplaceExpr(Family.MONO, 1.0)) == GeneralizedFunction((SingularTerm(1.0, 1.0),))
    assert invert(LaplaceExpr(Family.MONO, 0.0)).singular == (SingularTerm(1.0, 0.0),)


def test_rabotnov_entry():
    f = invert(binomial(0.0, alpha=0.8, sign=-1, lam=3.0))
    assert f.singular == ()
    assert f.regular == (MLTerm(1.0, 0.8, 0.8, -1, 3.0, 0.8 - 1.0),)


def test_dimensionless_examples():
    f = invert(binomial(1.5))
    assert f.singular == (SingularTerm(1.0, 0.5),)
    assert f.regular == (MLTerm(-1.0, 1.0, 0.5, -1, 1.0, -0.5),)
    f = invert(binomial(2.5))
    assert f.singular == (SingularTerm(1.0, 1.5), SingularTerm(-1.0, 0.5))
    assert f.regular == (MLTerm(1.0, 1.0, 0.5, -1, 1.0, -0.5),)


def test_exact_multiple_convention():
    f = invert(binomial(2.0, alpha=1.0, sign=1, lam=2.0))
    assert [s.order for s in f.singular] == [1.0, 0.0]
    assert f.regular[0].beta == 1.0
    assert f.notes
    near = invert(binomial(2.0 + 1e-11, alpha=1.0))
    assert [s.order for s in near.singular] == [1.0, 0.0]


@settings(max_examples=200, deadline=None)
@given(st.floats(0.3, 2.0), st.floats(0.0, 1.0))
def test_extraction_count(alpha, frac):
    q = frac * 4 * alpha
    f = invert(binomial(q, alpha=alpha))
    n = math.floor(q / alpha)
    if abs(q - round(q / alpha) * alpha) < 1e-9:
        n = round(q / alpha)
    assert len(f.singular) == n
    beta = f.regular[0].beta
    assert 0 < beta <= alpha
    assert f.regular[0].t_power == beta - 1.0


def test_table_one_consistency_below_alpha():
    f = invert(binomial(0.4, alpha=0.9, sign=-1, lam=2.0))
    assert f.singular == ()
    assert f.regular == (MLTerm(1.0, 0.9, 0.9 - 0.4, -1, 2.0, 0.9 - 0.4 - 1.0),)


@pytest.mark.parametrize("q", [0.2, 0.5, 0.9])
def test_classical_first_order_limit(q):
    f = invert(binomial(q, alpha=1.0, sign=-1, lam=1.5))
    assert f.singular == ()
    assert f.regular == (MLTerm(1.0, 1.0, 1.0 - q, -1, 1.5, (1.0 - q) - 1.0),)


def test_sign_symmetry():
    plus = invert(binomial(2.7, alpha=0.8, sign=1, lam=1.7))
    minus = invert(binomial(2.7, alpha=0.8, sign=-1, lam=1.7))
    for j, (a, b) in enumerate(zip(plus.singular, minus.singular)):
        assert a.order == b.order
        assert b.coeff == a.coeff * (-1) ** j
    n = len(plus.singular)
    assert minus.regular[0].coeff == plus.regular[0].coeff * (-1) ** n


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(list(Family)), st.floats(0, 3.5), st.floats(0.3, 2.0),
       st.floats(0.25, 4.0), st.sampled_from([-1, 1]), st.sampled_from([0.5, 2.0, -4.0, 0.25]))
def test_linearity(family, q, alpha, lam, sign, c):
    e = LaplaceExpr(family, q, 1.3, alpha, sign, lam)
    assert invert(e.scaled(c)) == invert(e).scale(c)


def test_lambda_zero_reduces_to_monomial():
    assert invert(binomial(1.7, alpha=0.5, lam=0.0)) == invert(LaplaceExpr(Family.MONO, 1.2))
    f = invert(LaplaceExpr(Family.SHIFTED, 0.2, 1.0, 0.7, -1, 0.0))
    assert f.regular == (PowerTerm(rgamma(0.7 - 0.2), -(0.2 - 0.7) - 1.0),)


def test_shifted_structure():
    f = invert(LaplaceExpr(Family.SHIFTED, 2.9, 1.0, 0.6, -1, 2.0))
    assert [s.order for s in f.singular] == pytest.approx([2.3, 1.3, 0.3])
    assert [s.coeff for s in f.singular] == pytest.approx([1.0, -1.2, 0.6 * 1.6 * 4 / 2])
    assert isinstance(f.regular[0], ShiftedPowerTerm) and f.regular[0].skip == 3
    f = invert(LaplaceExpr(Family.SHIFTED, 0.0, 2.0, 1.5, 1, 0.5))
    assert f.regular == (ExpPowerTerm(2.0 / math.gamma(1.5), 0.5, 1, 0.5),)


def test_invalid_expressions():
    with pytest.raises(DomainError):
        binomial(-0.5)
    with pytest.raises(DomainError):
        binomial(1.0, alpha=0.0)
    with pytest.raises(DomainError):
        binomial(1.0, sign=0)
    with pytest.raises(ValueError):
        LaplaceExpr("triple", 1.0)


@pytest.mark.parametrize("alpha,q,expected", [
    (1.0, 0.5, PowerTerm(1 / math.gamma(0.5), -0.5)),
    (0.7, 0.2, PowerTerm(math.gamma(0.7) / math.gamma(0.5), -0.5)),
    (0.7, 0.7, SingularTerm(math.gamma(0.7), 0.0)),
    (1.0, 2.5, SingularTerm(1.0, 1.5)),
])
def test_power_law_derivative(alpha, q, expected):
    got = frac_derivative_power_law(alpha, q)
    assert type(got) is type(expected)
    for a, b in zip(vars(got).values(), vars(expected).values()):
        assert a == pytest.approx(b, rel=1e-14)


def test_forward_laplace_examples():
    f = GeneralizedFunction((SingularTerm(1.0, 1.0),))
    assert forward_laplace(f, 3.0).value == 3.0
    f = GeneralizedFunction(regular=(ExpPowerTerm(1.0, 0.0, -1, 1.0),))
    assert forward_laplace(f, 2.0).value == pytest.approx(1 / 3, rel=1e-10)
    e = binomial(0.7, alpha=0.9, sign=-1, lam=1.0)
    f = invert(e)
    for s in (1.0, 2.0, 5.0):
        assert forward_laplace(f, s).value == pytest.approx(e.value(s), rel=1e-8)


def test_forward_laplace_divergence():
    f = GeneralizedFunction(regular=(ExpPowerTerm(1.0, 0.0, 1, 2.0),))
    with pytest.raises(DivergentTransform):
        forward_laplace(f, 2.0)
    with pytest.raises(DivergentTransform):
        forward_laplace(GeneralizedFunction(regular=(PowerTerm(1.0, -1.0),)), 1.0)
    with pytest.raises(DomainError):
        forward_laplace(f, -1.0)


def test_singular_pointwise_vanishes_for_integer_monomials():
    for n in range(4):
        f = invert(LaplaceExpr(Family.MONO, float(n)))
        assert all(eval_pointwise(f, t).value == 0.0 for t in np.linspace(0.1, 10, 50))


def test_round_trip_small_sample():
    for e in sample_cases(3, 15):
        for r in check_expr(e):
            assert r.passed(), (e, r)


def test_round_trip_growing_cases():
    cases = [binomial(1.3, alpha=0.3, sign=1, lam=4.0), binomial(2.2, alpha=1.9, sign=1, lam=3.0),
             LaplaceExpr(Family.SHIFTED, 3.4, 1.0, 1.6, 1, 4.0)]
    for e in cases:
        assert s_points(e)[0] > e.abscissa()
        for r in check_expr(e):
            assert r.passed(), (e, r)
