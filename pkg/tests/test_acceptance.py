"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured worst
case and the tolerance it is held to, then asserts.
"""

import math

import mpmath as mp
import numpy as np
import pytest

from rlkummer.gamma import gamma, recip_gamma, sinpi
from rlkummer.hadamard import (
    CATALOG,
    finite_part,
    finite_part_taylor_form,
    monomial_function,
    right_finite_part,
    rl_derivative_fp,
    series_function,
)
from rlkummer.kummer import (
    KummerParams,
    kummer_transform_check,
    second_solution_series,
    verify_solution,
)
from rlkummer.leibniz import frac_leibniz
from rlkummer.operator import CompositionLaw, composition_defect, rl_monomial, rl_series
from rlkummer.series import diff, monomial, polynomial

A_GRID = [0.2, 0.3, 0.7, 1.4, 2.6]
C_GRID = [0.3, 0.7, 1.5, 2.5]
PAIRS = [(a, c) for a in A_GRID for c in C_GRID if round(c) != c]


@pytest.fixture
def report(capsys):
    def emit(number, title, worst, tol):
        ok = worst < tol
        with capsys.disabled():
            status = "PASS" if ok else "FAIL"
            print(f"\n[{status}] criterion {number}: {title}: worst {worst:.3e} (tol {tol:.0e})")
        assert ok, f"criterion {number}: worst {worst:.3e} >= {tol:.0e}"

    return emit


def coeff_gap(s, t):
    """Largest coefficient difference relative to the largest coefficient."""
    assert abs(s.offset - t.offset) < 1e-12
    n = max(len(s.coeffs), len(t.coeffs))
    a = list(s.coeffs) + [0.0] * (n - len(s.coeffs))
    b = list(t.coeffs) + [0.0] * (n - len(t.coeffs))
    return max(abs(x - y) for x, y in zip(a, b)) / max(map(abs, a + b))


def test_criterion_1_power_rule_vs_finite_part(report):
    worst = 0.0
    for m in (1, 2, 3, 4):
        for nu in (0.3, 0.5, 1.7):
            for x in (0.5, 1.0, 2.0):
                want = rl_monomial(m + 1.0, nu)(x)
                got = rl_derivative_fp(monomial_function(m), nu, 0.0, x)
                worst = max(worst, abs(got - want) / abs(want))
    report(1, "power rule vs finite-part derivative", worst, 1e-8)


def test_criterion_2_integer_order_limits(report):
    rng = np.random.default_rng(2024)
    polys = [monomial(float(k)) for k in range(6)]
    polys += [polynomial(rng.uniform(-1, 1, d + 1)) for d in range(6) for _ in range(4)]
    xs = np.linspace(0.5, 2.0, 31)
    near = 0.0
    exact = 0.0
    for p in polys:
        for n in (1, 2):
            at = rl_series(p, float(n))
            for eps in (1e-6, -1e-6):
                off = rl_series(p, n + eps)
                near = max(near, max(abs(off(x) - at(x)) for x in xs))
            classical = diff(p, n)
            if classical.is_zero:
                exact = max(exact, max(map(abs, at.coeffs)))
                continue
            assert at.offset == classical.offset
            exact = max(
                exact,
                max(abs(a - b) / abs(b) for a, b in zip(at.coeffs, classical.coeffs) if b),
            )
    report("2a", "order n +- 1e-6 vs order n, pointwise", near, 1e-4)
    report("2b", "integer order vs classical derivative", exact, 1e-13)


def test_criterion_3_composition_laws(report):
    worst = 0.0
    for p in (0.5, 1.3):
        for h in (polynomial([0, 0, 1]), polynomial([0, 0, 0, 1])):
            d = composition_defect(h, p, p, CompositionLaw.D_AFTER_I)
            assert d.correction_terms == []
            worst = max(worst, coeff_gap(d.composed, h))
    report("3a", "derivative after integral of equal order is the identity", worst, 1e-12)

    nu, m = 0.5, 1
    d = composition_defect(polynomial([1.0]), nu, float(m), CompositionLaw.DV_AFTER_DM)
    # closed-form summand f(0) x^{-nu-m} / Gamma(1-nu-m), entering with a minus sign
    summand = 1.0 * recip_gamma(1.0 - nu - m)
    [(coef, expo)] = d.correction_terms
    assert abs(expo - (-nu - m)) < 1e-15
    gap = abs(coef + summand) / abs(summand)
    for x in (0.25, 1.0, 3.0):
        sides = d.composed(x) - d.direct(x)
        gap = max(gap, abs(sides + summand * x ** (-nu - m)) / abs(summand * x ** (-nu - m)))
    report("3b", "defect term for f = 1, m = 1, nu = 0.5", gap, 1e-12)


def test_criterion_4_leibniz_identities(report):
    x = polynomial([0.0, 1.0])
    c = 0.7
    cx = polynomial([c, -1.0])
    first = 0.0
    second = 0.0
    for h in (polynomial([0, 0, 1]), polynomial([0, 0, 0, 1])):
        for alpha in (0.3, 0.5, 0.9):
            lhs = frac_leibniz(x, rl_series(h, 1.0 - alpha), alpha, 2).result
            first = max(first, coeff_gap(lhs, x * rl_series(h, 1.0) + alpha * h))
            lhs = frac_leibniz(cx, rl_series(h, -alpha), alpha, 2).result
            second = max(second, coeff_gap(lhs, cx * h - alpha * rl_series(h, -1.0)))
    report("4a", "D^a[x D^(1-a) h] = x h' + a h", first, 1e-11)
    report("4b", "D^a[(c-x) D^(-a) h] = (c-x) h - a D^(-1) h", second, 1e-11)


def test_criterion_5_leibniz_series_equals_closed_form(report):
    mp.mp.dps = 40
    N = 30
    worst = 0.0
    count = 0
    for a, c in PAIRS:
        if not a - c > -1.0:
            continue
        count += 1
        s = second_solution_series(KummerParams(a, c), N=N)
        # x^{1-c} 1F1(a-c+1; 2-c; x) coefficients
        for n in range(N + 1):
            want = mp.rf(a - c + 1, n) / (mp.rf(2 - mp.mpf(c), n) * mp.factorial(n))
            got = s.coefficient(1.0 - c + n)
            worst = max(worst, float(abs(got - want) / abs(want)))
    assert count == 14
    report(5, "Leibniz series vs closed-form coefficients, n <= 30", worst, 1e-11)


def test_criterion_6_ode_residual(report):
    grid = np.logspace(math.log10(0.1), math.log10(5.0), 20)
    worst = 0.0
    for a, c in PAIRS:
        r = verify_solution(KummerParams(a, c), grid)
        worst = max(worst, r.max_normalized_residual)
    report("6a", "normalized ODE residual over the parameter grid", worst, 1e-9)
    r = verify_solution(KummerParams(0.5, 1.5), grid)
    report("6b", "normalized ODE residual for u = x^(-1/2)", r.max_normalized_residual, 1e-13)


def test_criterion_7_kummer_transformation(report):
    worst = max(
        kummer_transform_check(KummerParams(a, c), x)
        for a, c in PAIRS
        for x in (0.5, 1.0, 5.0, 10.0)
    )
    report(7, "Kummer transformation defect", worst, 1e-11)


def test_criterion_8_finite_part(report):
    one = CATALOG["one"]()
    err = max(
        abs(finite_part(one, 0.0, 1.0, 1.5).value + 2.0),
        abs(finite_part(one, 0.0, 1.0, 2.5).value + 2.0 / 3.0),
    )
    report("8a", "finite parts of x^-3/2 and x^-5/2 on [0, 1]", err, 1e-12)

    rng = np.random.default_rng(8)
    worst = 0.0
    for beta in (1.5, 2.5, 3.3, 4.7):
        for b in (0.5, 1.0, 2.0):
            for deg in range(6):
                poly = polynomial(rng.uniform(-1, 1, deg + 1))
                lhs = recip_gamma(1.0 - beta) * right_finite_part(
                    series_function(poly), 0.0, b, beta
                ).value
                rhs = finite_part_taylor_form(poly, b, beta)
                worst = max(worst, abs(lhs - rhs) / abs(rhs))
    report("8b", "Taylor-split form of the scaled finite part", worst, 1e-9)


def test_criterion_9_gamma_identities(report):
    zs = [z for z in np.linspace(-20, 20, 4001) if abs(z - round(z)) > 1e-6]
    refl = max(
        abs(recip_gamma(z) * recip_gamma(1 - z) - sinpi(z) / math.pi) / abs(sinpi(z) / math.pi)
        for z in zs
    )
    report("9a", "reflection formula", refl, 1e-11)

    alt = 0.0
    for a in np.linspace(-9.95, 9.95, 200):
        for n in range(11):
            want = (-1) ** n * math.pi / sinpi(a)
            alt = max(alt, abs(gamma(a - n) * gamma(1 - a + n) - want) / abs(want))
    report("9b", "alternating-sign reflection identity, n = 0..10", alt, 1e-11)
