r"""Fractional Leibniz rule for an analytic factor times a general series.

.. math::

    \mathfrak{D}^{\nu}_{a+}[f g]
        = \sum_{k=0}^{K} \binom{\nu}{k} f^{(k)}\, \mathfrak{D}^{\nu-k}_{a+} g

The analytic factor ``f`` always takes the classical derivatives and ``g``
takes the fractional ones; the rule is not symmetrized.

The sum alternates in sign for most orders and its condition number grows
roughly like ``2**n`` in the output order ``n`` (about 1e9 at ``n = 30``), so
all terms are accumulated in double-double. The binomial weights, the
derivative factors of ``f`` and the power-rule factors of ``g`` are generated
by exact recurrences in the same precision; each output coefficient is
rounded to a double only once at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from rlkummer._dd import DD
from rlkummer.errors import DomainError
from rlkummer.gamma import INTEGER_TOL, nearest_integer
from rlkummer.operator import power_rule_factors
from rlkummer.series import GenPowerSeries


@dataclass(frozen=True)
class LeibnizExpansion:
    """Result of a truncated Leibniz sum.

    ``last_term_norm`` is the largest coefficient magnitude contributed by the
    final term ``k = terms_used - 1``; it is the usual truncation indicator.
    """

    result: GenPowerSeries
    terms_used: int
    last_term_norm: float


def _analytic_coeffs(f: GenPowerSeries) -> list[float]:
    shift = nearest_integer(f.offset, INTEGER_TOL)
    if shift is None or shift < 0:
        raise DomainError(
            f"analytic factor needs a nonnegative integer offset, got {f.offset}"
        )
    if f.is_zero:
        return [0.0]
    return [0.0] * shift + list(f.coeffs)


def frac_leibniz(
    f_analytic: GenPowerSeries,
    g: GenPowerSeries,
    nu: float,
    terms: int | None = None,
) -> LeibnizExpansion:
    """Apply the operator of order *nu* to ``f_analytic * g`` by the Leibniz rule.

    *terms* is the last index ``K`` of the sum (so ``K + 1`` terms are used);
    it defaults to the highest power stored in *f_analytic*. For a polynomial
    ``f`` of degree ``d`` any ``K >= d`` gives the exact result.
    """
    if f_analytic.base_point != g.base_point:
        raise DomainError("f and g must share a base point")
    fc = _analytic_coeffs(f_analytic)
    degree = len(fc) - 1
    K = degree if terms is None else int(terms)
    if K < 0:
        raise DomainError(f"number of Leibniz terms must be >= 0, got {K}")
    if g.offset <= -1.0 and not g.is_zero:
        raise DomainError(f"g needs offset > -1 for the power rule, got {g.offset}")

    gc = g.coeffs
    ng = len(gc)
    if f_analytic.truncated and g.truncated:
        length = min(degree + 1, ng)
    elif f_analytic.truncated:
        length = degree + 1
    elif g.truncated:
        length = ng
    else:
        length = degree + ng

    # factors[i][k] = Gamma(mu+i+1) / Gamma(mu+i+1-nu+k)
    kmax = min(K, degree)
    mu = g.offset
    factors = [_factor_row(mu + i + 1.0, nu, kmax) for i in range(ng)]

    acc = [DD() for _ in range(length)]
    # falling[j] = j!/(j-k)!, the weight of fc[j] in the k-th derivative of f
    falling = [DD(1.0) for _ in range(degree + 1)]
    binom = DD(1.0)
    last = 0.0
    for k in range(kmax + 1):
        if k > 0:
            binom = binom * (DD(nu) - (k - 1)) / k
            for j in range(k, degree + 1):
                falling[j] = falling[j] * (j - k + 1)
        contrib = [DD() for _ in range(length)]
        if not binom.is_zero():
            for j in range(k, degree + 1):
                if fc[j] == 0.0:
                    continue
                w = binom * falling[j] * fc[j]
                for i in range(min(ng, length - j)):
                    if gc[i] != 0.0:
                        contrib[j + i] = contrib[j + i] + w * factors[i][k] * gc[i]
        for p in range(length):
            acc[p] = acc[p] + contrib[p]
        if k == K:
            last = max(abs(float(c)) for c in contrib)

    result = GenPowerSeries(
        tuple(float(c) for c in acc),
        mu - nu,
        g.base_point,
        f_analytic.truncated or g.truncated,
    )
    return LeibnizExpansion(result, K + 1, last)


def _factor_row(beta: float, nu: float, kmax: int) -> list[DD]:
    """Power-rule factors ``Gamma(beta)/Gamma(beta - nu + k)`` for ``k <= kmax``.

    Successive entries divide by ``beta - nu + k - 1``; when that is a pole
    of gamma the recurrence restarts from a fresh gamma ratio.
    """
    s = beta - nu
    m = nearest_integer(s, INTEGER_TOL)
    if m is not None:
        s = float(m)
    row = [power_rule_factors(beta, nu, 1)[0]]
    for k in range(1, kmax + 1):
        if row[-1].is_zero() or (m is not None and m + k - 1 <= 0):
            row.append(power_rule_factors(beta, nu - k, 1)[0])
        else:
            row.append(row[-1] / (DD(s) + (k - 1)))
    return row
