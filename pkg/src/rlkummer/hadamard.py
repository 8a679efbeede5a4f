r"""Hadamard finite-part integrals with an algebraic singularity at the left end.

For ``beta > 1`` (not an integer) and ``n = floor(beta) + 1``

.. math::

    \mathcal{H}\!\int_a^b (x-a)^{-\beta} f(x)\,dx
        = \sum_{k=0}^{n} \frac{f^{(k)}(a)\,(b-a)^{k+1-\beta}}{(k+1-\beta)\,k!}
          + \int_a^b (x-a)^{-\beta} R_n(x)\,dx,

where :math:`R_n = f - T_n` is the Taylor remainder about ``a``. The remainder
integrand behaves like :math:`(x-a)^{n+1-\beta}` and is integrated by
adaptive Gauss-Kronrod quadrature.

The same machinery gives the integral form of the RL derivative, used as an
independent cross-check of the series power rule.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

from scipy import integrate

from rlkummer.errors import DomainError
from rlkummer.gamma import INTEGER_TOL, nearest_integer, recip_gamma
from rlkummer.operator import rl_series
from rlkummer.series import GenPowerSeries, diff

#: Absolute tolerance requested from the remainder quadrature.
QUAD_EPSABS = 1.0e-12

# Taylor terms beyond the subtracted polynomial tried for the remainder.
_TAIL_TERMS = 40


@dataclass(frozen=True)
class SmoothFunction:
    """A real function together with its derivatives up to ``max_order``.

    ``derivative(k, x)`` returns :math:`f^{(k)}(x)`; ``derivative(0, x)``
    must agree with ``value(x)``.
    """

    value: Callable[[float], float]
    derivative: Callable[[int, float], float]
    max_order: int
    name: str = "f"

    def __call__(self, x: float) -> float:
        return self.value(x)


def monomial_function(m: int) -> SmoothFunction:
    """``x**m`` with all derivatives (``max_order`` is effectively unbounded)."""

    def deriv(k: int, x: float) -> float:
        if k > m:
            return 0.0
        return math.perm(m, k) * x ** (m - k)

    return SmoothFunction(lambda x: x**m, deriv, 10_000, name=f"x^{m}")


def exp_function() -> SmoothFunction:
    return SmoothFunction(math.exp, lambda k, x: math.exp(x), 10_000, name="exp")


def sin_function() -> SmoothFunction:
    def deriv(k: int, x: float) -> float:
        return math.sin(x + k * math.pi / 2)

    return SmoothFunction(math.sin, deriv, 10_000, name="sin")


def series_function(s: GenPowerSeries) -> SmoothFunction:
    """Wrap an exact series with a nonnegative integer offset (a polynomial)."""
    if s.truncated or nearest_integer(s.offset, INTEGER_TOL) is None or s.offset < 0:
        raise DomainError("only exact polynomial series can be wrapped")

    def deriv(k: int, x: float) -> float:
        return diff(s, k)(x)

    return SmoothFunction(s, deriv, 10_000, name="series")


#: Functions selectable by name from the command line.
CATALOG: dict[str, Callable[[], SmoothFunction]] = {
    "one": lambda: monomial_function(0),
    "x": lambda: monomial_function(1),
    "x2": lambda: monomial_function(2),
    "exp": exp_function,
    "sin": sin_function,
}


def reflect(f: SmoothFunction, b: float) -> SmoothFunction:
    """The function ``s -> f(b - s)`` with correspondingly signed derivatives."""
    return SmoothFunction(
        lambda s: f.value(b - s),
        lambda k, s: (-1) ** k * f.derivative(k, b - s),
        f.max_order,
        name=f"{f.name}(b-s)",
    )


@dataclass(frozen=True)
class FinitePartResult:
    """Finite-part value with its decomposition.

    ``value`` is ``math.fsum(singular_terms + [regular_part])``.
    """

    value: float
    singular_terms: list[float] = field(default_factory=list)
    regular_part: float = 0.0
    remainder_order: int = 0

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "singular_terms": list(self.singular_terms),
            "regular_part": self.regular_part,
            "remainder_order": self.remainder_order,
        }


def _check_beta(beta: float) -> None:
    if not math.isfinite(beta):
        raise DomainError(f"beta must be finite, got {beta!r}")
    m = nearest_integer(beta, INTEGER_TOL)
    if m is not None and m >= 1:
        raise DomainError(f"finite part is undefined for integer beta={beta}")


def finite_part(
    f: SmoothFunction, a: float, b: float, beta: float
) -> FinitePartResult:
    """Finite part of ``int_a^b (x-a)**(-beta) f(x) dx``.

    For ``beta < 1`` the integral converges and is computed directly with an
    algebraic endpoint weight.
    """
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    _check_beta(beta)

    if beta < 1.0:
        value, _ = integrate.quad(
            f.value, a, b, weight="alg", wvar=(-beta, 0.0),
            epsabs=QUAD_EPSABS, epsrel=1e-13, limit=200,
        )
        return FinitePartResult(value, [], value, 0)

    n = math.floor(beta) + 1
    if f.max_order < n:
        raise DomainError(
            f"{f.name} has derivatives up to order {f.max_order}, need {n}"
        )

    taylor = [f.derivative(k, a) / math.factorial(k) for k in range(n + 1)]
    h = b - a
    singular = [c * h ** (k + 1 - beta) / (k + 1 - beta) for k, c in enumerate(taylor)]

    # Past order n the Taylor coefficients give the remainder without the
    # cancellation of f - T_n, which t**-beta would amplify near x = a.
    top = min(f.max_order, n + _TAIL_TERMS)
    tail = [f.derivative(k, a) / math.factorial(k) for k in range(n + 1, top + 1)]

    def integrand(x: float) -> float:
        t = x - a
        if tail:
            terms = [c * t ** (n + 1 + j - beta) for j, c in enumerate(tail)]
            total = math.fsum(terms)
            last = abs(terms[-1]) + (abs(terms[-2]) if len(terms) > 1 else 0.0)
            if all(c == 0.0 for c in tail) or last <= 1e-17 * abs(total):
                return total
        rem = f.value(x) - math.fsum(c * t**k for k, c in enumerate(taylor))
        return rem * t**-beta

    regular, _ = integrate.quad(
        integrand, a, b, epsabs=QUAD_EPSABS, epsrel=1e-13, limit=200
    )
    return FinitePartResult(
        math.fsum([*singular, regular]), singular, regular, n
    )


def right_finite_part(
    f: SmoothFunction, a: float, b: float, beta: float
) -> FinitePartResult:
    """Finite part of ``int_a^b (b-x)**(-beta) f(x) dx`` (singular at ``b``)."""
    return finite_part(reflect(f, b), 0.0, b - a, beta)


def rl_derivative_fp(f: SmoothFunction, nu: float, a: float, x: float) -> float:
    r"""RL derivative of order ``0 < nu`` (non-integer) as a finite-part integral.

    .. math::

        (\mathfrak{D}^{\nu}_{a+} f)(x)
            = \frac{1}{\Gamma(-\nu)}\,
              \mathcal{H}\!\int_a^x (x-t)^{-\nu-1} f(t)\,dt
    """
    if not nu > 0.0:
        raise DomainError(f"order must be positive, got {nu}")
    m = nearest_integer(nu, INTEGER_TOL)
    if m is not None:
        raise DomainError(f"integer order {nu} has no finite-part form")
    if not x > a:
        raise DomainError(f"need x > a, got x={x}, a={a}")
    return recip_gamma(-nu) * right_finite_part(f, a, x, nu + 1.0).value


def finite_part_taylor_form(poly: GenPowerSeries, b: float, beta: float) -> float:
    r"""Closed split of :math:`\Gamma(1-\beta)^{-1}\,\mathcal{H}\!\int_a^b (b-x)^{-\beta} f(x)\,dx`.

    For a polynomial ``f`` given as an exact series about ``a``, with
    ``m = floor(beta) + 1`` and ``beta > 1``:

    .. math::

        \sum_{k=0}^{m-1} \frac{f^{(k)}(a)(b-a)^{k+1-\beta}}{\Gamma(k+2-\beta)}
            + \bigl(\mathcal{I}^{m-\beta+1}_{a+} f^{(m)}\bigr)(b)
    """
    _check_beta(beta)
    if beta <= 1.0:
        raise DomainError(f"need beta > 1, got {beta}")
    if poly.truncated or nearest_integer(poly.offset, INTEGER_TOL) is None:
        raise DomainError("expected an exact polynomial series")
    m = math.floor(beta) + 1
    a = poly.base_point
    h = b - a
    head = math.fsum(
        diff(poly, k)(a) * h ** (k + 1 - beta) * recip_gamma(k + 2 - beta)
        for k in range(m)
    )
    tail = rl_series(diff(poly, m), -(m - beta + 1))
    return head + (0.0 if tail.is_zero else tail(b))
