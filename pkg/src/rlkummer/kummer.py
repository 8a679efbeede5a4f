r"""Confluent hypergeometric equation solved through the fractional operator.

Kummer's equation

.. math::

    x u'' + (c - x) u' - a u = 0

is attacked with the ansatz :math:`u = \mathfrak{D}^{-1-\alpha}_{0+} f`. The
fractional Leibniz rule turns it into a first order equation for ``f`` which,
for :math:`\alpha = -a`, is separable with solution
:math:`f = K e^x x^{a-c}`. Applying :math:`\mathfrak{D}^{a-1}_{0+}` to that
``f`` (Leibniz again) yields the second solution

.. math::

    u(x) = x^{1-c} e^x {}_1F_1(1-a; 2-c; -x) = x^{1-c} {}_1F_1(a-c+1; 2-c; x)

once ``K`` is normalized so that :math:`K\,\Gamma(a-c+1)/\Gamma(2-c) = 1`.

This module builds each stage as a series, evaluates the closed form, and
checks the result against the differential equation with analytic
derivatives.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from rlkummer._dd import DD, two_sum
from rlkummer.errors import DomainError
from rlkummer.gamma import (
    INTEGER_TOL,
    gamma_ratio,
    gamma_reflection,
    gen_binomial,
    is_nonpositive_integer,
    nearest_integer,
    pochhammer,
    recip_gamma,
)
from rlkummer.leibniz import LeibnizExpansion, frac_leibniz
from rlkummer.operator import rl_series
from rlkummer.series import GenPowerSeries, exp_series, monomial, polynomial

#: Largest ``|x|`` for which the series evaluation is claimed accurate.
X_MAX = 30.0

_MAX_TERMS = 100_000
_CANCELLATION_LIMIT = 1.0e16


@dataclass(frozen=True)
class KummerParams:
    """Parameters ``(a, c)`` of Kummer's equation, with degeneracy flags."""

    a: float
    c: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.c)):
            raise DomainError(f"parameters must be finite, got a={self.a}, c={self.c}")

    @property
    def c_is_integer(self) -> bool:
        return nearest_integer(self.c, INTEGER_TOL) is not None

    @property
    def first_terminates(self) -> bool:
        """``a`` in ``{0, -1, -2, ...}``: the first solution is a polynomial."""
        return is_nonpositive_integer(self.a, INTEGER_TOL)

    @property
    def second_terminates(self) -> bool:
        """``a - c + 1`` in ``{0, -1, ...}``: the second solution's series terminates."""
        return is_nonpositive_integer(self.a - self.c + 1.0, INTEGER_TOL)

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "c": self.c}


def _require_second(params: KummerParams) -> None:
    if params.c_is_integer:
        raise DomainError(
            f"c={params.c} is an integer; the second solution is not independent"
        )


# {{{ 1F1


def _exact_pole(z: float) -> bool:
    return z <= 0.0 and z == math.floor(z)


def kummer_1f1(alpha: float, gamma: float, x: float) -> float:
    r"""Kummer's function :math:`{}_1F_1(\alpha;\gamma;x)` by its power series.

    Terms follow the exact ratio recurrence and are accumulated in
    double-double, so the cancellation of the alternating series for
    negative ``x`` costs little accuracy. The sum terminates when *alpha*
    is a nonpositive integer; otherwise it stops once two consecutive terms
    are below ``1e-16`` of the running sum and the terms are decaying.

    If the alternating sum cancels by more than ``1e16`` (only possible for
    ``x`` far below zero, e.g. ``1F1(a; a; -30) = exp(-30)``) the value is
    taken from the positive-term series of ``exp(x) 1F1(gamma-alpha; gamma; -x)``.
    """
    if _exact_pole(gamma):
        raise DomainError(f"1F1 has a pole at gamma={gamma}")
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")

    nterms = None
    if _exact_pole(alpha):
        nterms = int(-alpha) + 1

    term = DD(1.0)
    total = DD(1.0)
    magnitude = 1.0
    small = 0
    n = 0
    while True:
        if nterms is not None and n + 1 >= nterms:
            break
        if n >= _MAX_TERMS:
            raise DomainError(f"1F1({alpha}; {gamma}; {x}) did not converge")
        num = DD(*two_sum(alpha, float(n))) * x
        den = DD(*two_sum(gamma, float(n))) * (n + 1)
        term = term * num / den
        total = total + term
        magnitude += abs(term.hi)
        n += 1
        if nterms is not None:
            continue
        t, s = abs(term.hi), abs(total.hi)
        decaying = n > abs(alpha) + abs(gamma) + abs(x)
        small = small + 1 if (t <= 1e-16 * s and decaying) or t == 0.0 else 0
        if small >= 2:
            break
    if nterms is None and x < 0.0 and magnitude > _CANCELLATION_LIMIT * abs(total.hi):
        return math.exp(x) * kummer_1f1(gamma - alpha, gamma, -x)
    return float(total)


def kummer_transform_check(params: KummerParams, x: float) -> float:
    r"""Relative defect of :math:`{}_1F_1(a;c;x) = e^x\,{}_1F_1(c-a;c;-x)`."""
    a, c = params.a, params.c
    if _exact_pole(c):
        raise DomainError(f"1F1 has a pole at c={c}")
    lhs = kummer_1f1(a, c, x)
    rhs = math.exp(x) * kummer_1f1(c - a, c, -x)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


# }}}


# {{{ derivation stages


def normalization_constant(params: KummerParams) -> float:
    """The ``K`` with ``K * Gamma(a-c+1) / Gamma(2-c) = 1``."""
    return gamma_ratio(2.0 - params.c, params.a - params.c + 1.0)


def reduced_equation(
    params: KummerParams, alpha: float, h: GenPowerSeries
) -> tuple[GenPowerSeries, GenPowerSeries]:
    r"""Both sides of the operator reduction for a trial function *h*.

    The left side applies :math:`\mathfrak{D}^{\alpha}` to each term of
    Kummer's equation after the substitution :math:`u = \mathfrak{D}^{-1-\alpha} h`,
    using the Leibniz rule for the products with ``x`` and ``c - x``:

    .. math::

        \mathfrak{D}^{\alpha}[x\,\mathfrak{D}^{1-\alpha} h]
        + \mathfrak{D}^{\alpha}[(c-x)\,\mathfrak{D}^{-\alpha} h]
        - a\,\mathfrak{D}^{\alpha}\mathfrak{D}^{-1-\alpha} h

    The right side is the reduced form
    :math:`x h' + (\alpha + c - x) h - (a + \alpha)\,\mathfrak{D}^{-1} h`.
    They agree when ``h`` meets the vanishing boundary conditions.
    """
    x = polynomial([0.0, 1.0], h.base_point)
    c_minus_x = polynomial([params.c, -1.0], h.base_point)
    lhs = (
        frac_leibniz(x, rl_series(h, 1.0 - alpha), alpha, 1).result
        + frac_leibniz(c_minus_x, rl_series(h, -alpha), alpha, 1).result
        - params.a * rl_series(rl_series(h, -1.0 - alpha), alpha)
    )
    rhs = (
        x * rl_series(h, 1.0)
        + polynomial([alpha + params.c, -1.0], h.base_point) * h
        - (params.a + alpha) * rl_series(h, -1.0)
    )
    return lhs, rhs


def reduced_factor(params: KummerParams, K: float, N: int) -> GenPowerSeries:
    """``K exp(x) x**(a-c)`` as a series of order *N*."""
    if N < 1:
        raise DomainError(f"series order must be >= 1, got {N}")
    return exp_series(N).scaled(K) * monomial(params.a - params.c)


def separable_residual(params: KummerParams, f: GenPowerSeries) -> GenPowerSeries:
    """``x f' + (c - a - x) f``, which vanishes for the reduced factor."""
    x = polynomial([0.0, 1.0], f.base_point)
    return x * rl_series(f, 1.0) + polynomial([params.c - params.a, -1.0]) * f


def second_solution_leibniz(
    params: KummerParams, K: float | None = None, N: int = 40
) -> LeibnizExpansion:
    """Leibniz expansion of ``D^{a-1}[K exp(x) x**(a-c)]``; ``K=None`` normalizes."""
    _require_second(params)
    mu = params.a - params.c
    if not mu > -1.0:
        raise DomainError(
            f"need a - c > -1 to differintegrate x**(a-c), got a - c = {mu}"
        )
    if N < 1:
        raise DomainError(f"series order must be >= 1, got {N}")
    if K is None:
        K = normalization_constant(params)
    return frac_leibniz(exp_series(N), monomial(mu, K), params.a - 1.0, N)


def second_solution_series(
    params: KummerParams, K: float | None = None, N: int = 40
) -> GenPowerSeries:
    """Series of the second solution built with the fractional Leibniz rule.

    The result has offset ``1 - c``. With ``K=None`` the normalizing constant
    is used, so the leading coefficient is ``1``.
    """
    return second_solution_leibniz(params, K, N).result


def binomial_coefficients(params: KummerParams, N: int) -> list[float]:
    """Coefficients of ``x**n`` in the unsimplified Leibniz sum (before ``e**x``):
    ``C(a-1, n) Gamma(a-c+1) / Gamma(n+2-c)``.
    """
    a, c = params.a, params.c
    return [
        gen_binomial(a - 1.0, n) * gamma_ratio(a - c + 1.0, n + 2.0 - c)
        for n in range(N + 1)
    ]


def reflected_coefficients(params: KummerParams, N: int) -> list[float]:
    """The same coefficients with ``1/Gamma(a-n)`` removed by reflection.

    ``Gamma(a-n) Gamma(1-a+n) = (-1)**n pi / sin(pi a)`` turns them into
    ``Gamma(a) Gamma(a-c+1) sin(pi a)/pi * (-1)**n Gamma(1-a+n) / (Gamma(n+2-c) n!)``.
    Undefined for integer ``a``.
    """
    a, c = params.a, params.c
    if nearest_integer(a, INTEGER_TOL) is not None:
        raise DomainError("the reflected form divides by sin(pi a) = 0 for integer a")
    pref = math.gamma(a) * math.gamma(a - c + 1.0) / gamma_reflection(a)
    return [
        pref * (-1.0) ** n * math.gamma(1.0 - a + n) * recip_gamma(n + 2.0 - c)
        / math.factorial(n)
        for n in range(N + 1)
    ]


def pochhammer_coefficients(params: KummerParams, N: int) -> list[float]:
    """``(1-a)_n / (2-c)_n * (-1)**n / n!``: the normalized simplified form."""
    a, c = params.a, params.c
    return [
        pochhammer(1.0 - a, n) / pochhammer(2.0 - c, n) * (-1.0) ** n
        / math.factorial(n)
        for n in range(N + 1)
    ]


def closed_form_coefficients(params: KummerParams, N: int) -> list[float]:
    """``(a-c+1)_n / ((2-c)_n n!)``: coefficients of ``x**(1-c+n)`` in the solution."""
    a, c = params.a, params.c
    return [
        pochhammer(a - c + 1.0, n) / pochhammer(2.0 - c, n) / math.factorial(n)
        for n in range(N + 1)
    ]


# }}}


# {{{ closed form and verification


def first_solution(params: KummerParams, x: float) -> float:
    return kummer_1f1(params.a, params.c, x)


def second_solution_closed(params: KummerParams, x: float) -> float:
    """``x**(1-c) * 1F1(a-c+1; 2-c; x)`` for ``x > 0``."""
    if not x > 0.0:
        raise DomainError(f"second solution needs x > 0, got {x}")
    if _exact_pole(2.0 - params.c):
        raise DomainError(f"2 - c = {2.0 - params.c} is a pole of 1F1")
    return x ** (1.0 - params.c) * kummer_1f1(
        params.a - params.c + 1.0, 2.0 - params.c, x
    )


def _jet(lam: float, alpha: float, gamma: float, x: float) -> tuple[float, float, float]:
    """``u, u', u''`` for ``u = x**lam * 1F1(alpha; gamma; x)``.

    Uses ``d/dx 1F1(alpha; gamma; x) = alpha/gamma * 1F1(alpha+1; gamma+1; x)``.
    """
    f0 = kummer_1f1(alpha, gamma, x)
    f1 = 0.0 if alpha == 0.0 else alpha / gamma * kummer_1f1(alpha + 1, gamma + 1, x)
    c2 = alpha * (alpha + 1.0)
    f2 = 0.0 if c2 == 0.0 else c2 / (gamma * (gamma + 1.0)) * kummer_1f1(
        alpha + 2, gamma + 2, x
    )
    p0 = x**lam
    p1 = lam * x ** (lam - 1.0)
    p2 = lam * (lam - 1.0) * x ** (lam - 2.0)
    return p0 * f0, p1 * f0 + p0 * f1, p2 * f0 + 2.0 * p1 * f1 + p0 * f2


@dataclass(frozen=True)
class ResidualReport:
    """Pointwise residuals of Kummer's equation on a grid.

    ``scale`` is the largest magnitude among the three terms ``x u''``,
    ``(c - x) u'`` and ``a u`` over the grid.
    """

    params: KummerParams
    grid: list[float]
    residuals: list[float]
    scale: float
    max_normalized_residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": self.params.to_dict(),
            "grid": list(self.grid),
            "residuals": list(self.residuals),
            "scale": self.scale,
            "max_normalized_residual": self.max_normalized_residual,
        }


def verify_solution(
    params: KummerParams, grid: Sequence[float], solution: str = "second"
) -> ResidualReport:
    """Residual of Kummer's equation for the closed-form solution on *grid*.

    ``solution`` is ``"second"`` (the fractional-calculus solution) or
    ``"first"`` (``1F1(a; c; x)``, a guard on the evaluator itself).
    """
    grid = [float(x) for x in grid]
    if not grid:
        raise DomainError("grid is empty")
    if any(not 0.0 < x <= X_MAX for x in grid):
        raise DomainError(f"grid points must lie in (0, {X_MAX}]")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("grid must be strictly increasing")

    a, c = params.a, params.c
    if solution == "second":
        _require_second(params)
        lam, alpha, gamma = 1.0 - c, a - c + 1.0, 2.0 - c
    elif solution == "first":
        if _exact_pole(c):
            raise DomainError(f"1F1 has a pole at c={c}")
        lam, alpha, gamma = 0.0, a, c
    else:
        raise ValueError(f"unknown solution {solution!r}")

    residuals = []
    scale = 0.0
    for x in grid:
        u, du, d2u = _jet(lam, alpha, gamma, x)
        terms = (x * d2u, (c - x) * du, -a * u)
        residuals.append(math.fsum(terms))
        scale = max(scale, *(abs(t) for t in terms))

    worst = max(abs(r) for r in residuals)
    normalized = worst / scale if scale > 0.0 else worst
    return ResidualReport(params, grid, residuals, scale, normalized)


# }}}
