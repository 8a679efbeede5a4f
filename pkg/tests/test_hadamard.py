import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from rlkummer.errors import DomainError
from rlkummer.gamma import recip_gamma
from rlkummer.hadamard import (
    CATALOG,
    exp_function,
    finite_part,
    finite_part_taylor_form,
    monomial_function,
    reflect,
    right_finite_part,
    rl_derivative_fp,
    series_function,
    sin_function,
)
from rlkummer.operator import rl_monomial
from rlkummer.series import GenPowerSeries, polynomial

SQRT_PI = math.sqrt(math.pi)


@pytest.mark.parametrize(
    ("name", "beta", "want"),
    [("one", 1.5, -2.0), ("x", 1.5, 2.0), ("one", 2.5, -2.0 / 3.0)],
)
def test_finite_part_examples(name, beta, want):
    res = finite_part(CATALOG[name](), 0.0, 1.0, beta)
    assert res.value == pytest.approx(want, abs=1e-12)
    assert res.remainder_order == math.floor(beta) + 1


def test_finite_part_of_x_decomposition():
    res = finite_part(monomial_function(1), 0.0, 1.0, 1.5)
    assert res.singular_terms[0] == 0.0
    assert res.singular_terms[1] == pytest.approx(2.0, rel=1e-15)
    assert res.regular_part == 0.0


@pytest.mark.parametrize("name", sorted(CATALOG))
@pytest.mark.parametrize("beta", [0.4, 1.5, 2.3, 3.7])
def test_value_is_sum_of_parts(name, beta):
    res = finite_part(CATALOG[name](), 0.2, 1.7, beta)
    assert res.value == math.fsum([*res.singular_terms, res.regular_part])
    if beta > 1:
        assert len(res.singular_terms) == math.floor(beta) + 2


@pytest.mark.parametrize("name", sorted(CATALOG))
@pytest.mark.parametrize("beta", [0.2, 0.5, 0.9, -0.5])
def test_convergent_case_matches_plain_quadrature(name, beta):
    f = CATALOG[name]()
    res = finite_part(f, 0.0, 2.0, beta)
    plain, _ = integrate.quad(lambda x: x**-beta * f(x), 0.0, 2.0, limit=200)
    assert res.value == pytest.approx(plain, abs=1e-10)


@pytest.mark.parametrize("beta", [1.5, 2.5, 3.3])
def test_exp_finite_part_against_analytic_continuation(beta):
    # FP int_0^b x^{-beta} e^x dx = sum_k b^{k+1-beta} / ((k+1-beta) k!)
    mp.mp.dps = 30
    b = 1.3
    want = mp.nsum(
        lambda k: mp.mpf(b) ** (k + 1 - beta) / ((k + 1 - beta) * mp.factorial(k)),
        [0, mp.inf],
    )
    res = finite_part(exp_function(), 0.0, b, beta)
    assert res.value == pytest.approx(float(want), rel=1e-12)


def test_rejects_integer_beta():
    with pytest.raises(DomainError):
        finite_part(monomial_function(0), 0.0, 1.0, 2.0)


def test_rejects_bad_interval():
    with pytest.raises(DomainError):
        finite_part(monomial_function(0), 1.0, 1.0, 1.5)


def test_rejects_insufficient_smoothness():
    f = sin_function()
    short = type(f)(f.value, f.derivative, 1, "short")
    with pytest.raises(DomainError):
        finite_part(short, 0.0, 1.0, 1.5)


def test_reflect():
    f = reflect(exp_function(), 2.0)
    assert f(0.5) == pytest.approx(math.exp(1.5))
    assert f.derivative(1, 0.5) == pytest.approx(-math.exp(1.5))


def test_series_function_only_for_polynomials():
    f = series_function(polynomial([1.0, 2.0, 3.0]))
    assert f.derivative(2, 5.0) == 6.0
    with pytest.raises(DomainError):
        series_function(GenPowerSeries((1.0,), 0.5))


# {{{ RL derivative as a finite part


@pytest.mark.parametrize(
    ("name", "want"),
    [
        ("x", 2.0 / SQRT_PI),
        ("one", 1.0 / SQRT_PI),
        ("x2", math.gamma(3.0) / math.gamma(2.5)),
    ],
)
def test_rl_derivative_fp_examples(name, want):
    got = rl_derivative_fp(CATALOG[name](), 0.5, 0.0, 1.0)
    assert got == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("nu", [0.3, 0.5, 1.7])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_power_rule_agreement(m, nu, x):
    want = rl_monomial(m + 1.0, nu)(x)
    got = rl_derivative_fp(monomial_function(m), nu, 0.0, x)
    assert abs(got - want) <= 1e-8 * abs(want)


@pytest.mark.parametrize("nu", [0.3, 1.5, 2.6])
@pytest.mark.parametrize("fn", [("exp", mp.exp), ("sin", mp.sin)])
def test_rl_derivative_fp_against_mpmath(nu, fn):
    mp.mp.dps = 30
    name, mf = fn
    for x in (0.5, 2.0):
        want = mp.differint(mf, x, nu, 0)
        got = rl_derivative_fp(CATALOG[name](), nu, 0.0, x)
        assert got == pytest.approx(float(want), rel=1e-10)


def test_rl_derivative_fp_nonzero_base():
    # D^{1/2}_{1+} (x-1) at x = 2 is 2/sqrt(pi)
    f = series_function(polynomial([-1.0, 1.0]))
    assert rl_derivative_fp(f, 0.5, 1.0, 2.0) == pytest.approx(2 / SQRT_PI, rel=1e-12)


@pytest.mark.parametrize("nu", [1.0, 0.0, -0.5])
def test_rl_derivative_fp_rejects_order(nu):
    with pytest.raises(DomainError):
        rl_derivative_fp(monomial_function(1), nu, 0.0, 1.0)


# }}}


# {{{ Taylor-split form of the scaled finite part


# the remainder quadrature has an absolute tolerance, so keep coefficients O(1)
polys = st.lists(
    st.floats(-3.0, 3.0).filter(lambda c: c == 0.0 or abs(c) > 1e-3),
    min_size=1,
    max_size=6,
)


@settings(max_examples=40, deadline=None)
@given(polys, st.sampled_from([1.5, 2.5, 3.3, 4.7]), st.floats(0.3, 3.0))
def test_taylor_split_form(cs, beta, b):
    poly = polynomial(cs)
    if poly.is_zero:
        return
    lhs = recip_gamma(1.0 - beta) * right_finite_part(
        series_function(poly), 0.0, b, beta
    ).value
    rhs = finite_part_taylor_form(poly, b, beta)
    scale = max(
        abs(c) * b ** (k + 1 - beta) * abs(recip_gamma(k + 2 - beta))
        for k, c in enumerate(cs)
    )
    assert abs(lhs - rhs) <= 1e-9 * max(abs(rhs), scale)


def test_taylor_split_form_needs_polynomial():
    with pytest.raises(DomainError):
        finite_part_taylor_form(GenPowerSeries((1.0,), 0.5), 1.0, 1.5)
    with pytest.raises(DomainError):
        finite_part_taylor_form(polynomial([1.0]), 1.0, 0.5)


def test_taylor_split_form_left_kernel_differs_for_x():
    # with the singularity at the left end the split does not hold for f = x
    beta = 1.5
    left = recip_gamma(1.0 - beta) * finite_part(monomial_function(1), 0.0, 1.0, beta).value
    right = finite_part_taylor_form(polynomial([0.0, 1.0]), 1.0, beta)
    assert left == pytest.approx(-1.0 / SQRT_PI, rel=1e-12)
    assert right == pytest.approx(2.0 / SQRT_PI, rel=1e-12)


# }}}
