r"""The unified Riemann-Liouville integro-differential operator on series.

A single order :math:`\nu \in \mathbb{R}` selects the operation: ``nu > 0`` is
the left-sided RL derivative, ``nu < 0`` the RL integral of order ``-nu`` and
``nu = 0`` the identity. On a power the operator acts by the power rule

.. math::

    \mathfrak{D}^{\nu}_{a+} (x-a)^{\beta-1}
        = \frac{\Gamma(\beta)}{\Gamma(\beta-\nu)} (x-a)^{\beta-\nu-1},
    \qquad \beta > 0,

which for ``nu > 0`` coincides with the Hadamard finite-part value of the
(divergent) integral form, so no quadrature is needed here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from rlkummer._dd import DD
from rlkummer.errors import DivergentBoundaryError, DomainError
from rlkummer.gamma import (
    INTEGER_TOL,
    gamma_ratio,
    nearest_integer,
    recip_gamma,
)
from rlkummer.series import GenPowerSeries, monomial, zero_series


@dataclass(frozen=True)
class FracOrder:
    """Real operator order; positive differentiates, negative integrates."""

    nu: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.nu):
            raise DomainError(f"operator order must be finite, got {self.nu!r}")

    @property
    def n(self) -> int:
        return math.floor(abs(self.nu)) + 1

    @property
    def is_integer(self) -> bool:
        return nearest_integer(self.nu, INTEGER_TOL) is not None


def _as_nu(nu: FracOrder | float) -> float:
    return FracOrder(nu.nu if isinstance(nu, FracOrder) else float(nu)).nu


def power_rule_factors(beta0: float, nu: float, count: int) -> list[DD]:
    r"""Factors :math:`\Gamma(\beta_0+k)/\Gamma(\beta_0+k-\nu)` for ``k < count``.

    Only one gamma ratio is evaluated; the rest follow from the exact
    recurrence in double-double, so the factors carry a common rounding error
    and are otherwise accurate to ~1e-30 relative to each other. Terms where
    ``beta0 + k - nu`` is a pole of gamma are exactly zero.
    """
    if beta0 <= 0.0:
        raise DomainError(f"power rule needs beta > 0, got {beta0}")
    if count <= 0:
        return []

    s = beta0 - nu
    m = nearest_integer(s, INTEGER_TOL)
    if m is not None and m <= 0:
        k0, s = -m + 1, float(m)
    else:
        k0 = 0

    out = [DD() for _ in range(min(k0, count))]
    if k0 >= count:
        return out

    f = DD(gamma_ratio(beta0 + k0, s + k0))
    for k in range(k0, count):
        out.append(f)
        f = f * (DD(beta0) + k) / (DD(s) + k)
    return out


def rl_monomial(
    beta: float, nu: FracOrder | float, base: float = 0.0
) -> GenPowerSeries:
    """Apply the operator of order *nu* to ``(x - base)**(beta - 1)``."""
    nu = _as_nu(nu)
    if beta <= 0.0:
        raise DomainError(f"power rule needs beta > 0, got {beta}")
    coeff = gamma_ratio(beta, beta - nu)
    if coeff == 0.0:
        return zero_series(base)
    return monomial(beta - nu - 1.0, coeff, base)


def rl_series(s: GenPowerSeries, nu: FracOrder | float) -> GenPowerSeries:
    """Termwise application of the operator of order *nu* to *s*.

    Requires ``s.offset > -1`` so every term is an admissible power.
    """
    nu = _as_nu(nu)
    if nu == 0.0 or s.is_zero:
        return s
    if s.offset <= -1.0:
        raise DomainError(
            f"series offset must exceed -1 for the power rule, got {s.offset}"
        )
    factors = power_rule_factors(s.offset + 1.0, nu, len(s.coeffs))
    coeffs = tuple(float(f * c) for f, c in zip(factors, s.coeffs))
    return GenPowerSeries(coeffs, s.offset - nu, s.base_point, s.truncated)


def boundary_value(s: GenPowerSeries, order: float = math.nan) -> float:
    """Limit of the series as ``x -> a+``, read off from the exponents.

    A term with exponent exactly zero contributes its coefficient, positive
    exponents contribute nothing, and a nonzero term with a negative exponent
    makes the limit diverge (:class:`DivergentBoundaryError`). *order* only
    labels the error.
    """
    value = 0.0
    for c, e in zip(s.coeffs, s.exponents):
        if c == 0.0:
            continue
        if abs(e) <= INTEGER_TOL:
            value += c
        elif e < 0.0:
            raise DivergentBoundaryError(
                f"boundary value of D^{order} f diverges: term (x-a)^{e:g}",
                order=order,
                exponent=e,
            )
    if s.truncated and s.horizon <= 0.0:
        raise DomainError("series is truncated before the constant term")
    return value


def vanishing_conditions(s: GenPowerSeries, alpha: float) -> list[float]:
    r"""Boundary values :math:`(\mathfrak{D}^{-\alpha-k} s)(a)` for
    ``k = 0, ..., max(0, floor(1 - alpha))``.

    These must all vanish for the Leibniz reductions of the reduced Kummer
    equation to hold. A divergent value is reported as a signed infinity.
    """
    out = []
    for k in range(max(0, math.floor(1.0 - alpha)) + 1):
        order = -alpha - k
        t = rl_series(s, order)
        try:
            out.append(boundary_value(t, order))
        except DivergentBoundaryError:
            out.append(math.copysign(math.inf, t.coeffs[0]))
    return out


class CompositionLaw(enum.Enum):
    """Which composition of two operators to compare against the direct one.

    In every case ``p`` and ``q`` are the nonnegative magnitudes passed to
    :func:`composition_defect`:

    * ``I_AFTER_D``: ``D^{-p} D^{q} f = D^{q-p} f - sum``
    * ``DM_AFTER_DV``: ``D^{p} D^{q} f = D^{p+q} f`` for integer ``p``
    * ``DV_AFTER_DM``: ``D^{p} D^{q} f = D^{p+q} f - sum`` for integer ``q``
    * ``D_AFTER_D``: ``D^{p} D^{q} f = D^{p+q} f - sum`` (``m = floor(q)+1``)
    * ``D_AFTER_D_SWAPPED``: ``D^{q} D^{p} f = D^{p+q} f - sum``
      (``n = floor(p)+1``)
    * ``D_AFTER_I``: ``D^{p} D^{-q} f = D^{p-q} f`` for ``p >= q``
    """

    I_AFTER_D = "I_after_D"
    DM_AFTER_DV = "Dm_after_Dv"
    DV_AFTER_DM = "Dv_after_Dm"
    D_AFTER_D = "D_after_D"
    D_AFTER_D_SWAPPED = "D_after_D_swapped"
    D_AFTER_I = "D_after_I"


@dataclass(frozen=True)
class CompositionDefect:
    """Sequential vs direct application of a composition law.

    ``composed == direct + sum(c * (x-a)**e for c, e in correction_terms)``
    whenever the law holds; :meth:`residual` measures the difference.
    """

    law: CompositionLaw
    composed: GenPowerSeries
    direct: GenPowerSeries
    correction_terms: list[tuple[float, float]] = field(default_factory=list)

    @property
    def base_point(self) -> float:
        return self.direct.base_point

    def correction_series(self) -> list[GenPowerSeries]:
        return [monomial(e, c, self.base_point) for c, e in self.correction_terms]

    def residual(self, x: float) -> float:
        t = x - self.base_point
        corr = math.fsum(c * t**e for c, e in self.correction_terms if c != 0.0)
        return self.composed(x) - self.direct(x) - corr


def _check_nonnegative(p: float, q: float) -> None:
    if p < 0.0 or q < 0.0:
        raise DomainError(f"composition laws take p, q >= 0, got p={p}, q={q}")


def _integer(value: float, name: str) -> int:
    m = nearest_integer(value, INTEGER_TOL)
    if m is None or m < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value}")
    return m


def composition_defect(
    s: GenPowerSeries, p: float, q: float, law: CompositionLaw | str
) -> CompositionDefect:
    """Evaluate both sides of a composition law on the series *s*.

    Boundary values in the correction sums are read structurally from the
    series (see :func:`boundary_value`); a divergent one raises
    :class:`DivergentBoundaryError`, meaning the law does not apply to *s*.
    """
    law = CompositionLaw(law)
    _check_nonnegative(p, q)

    def bv(order: float) -> float:
        return boundary_value(rl_series(s, order), order)

    corrections: list[tuple[float, float]] = []
    if law is CompositionLaw.I_AFTER_D:
        outer, inner, total = -p, q, q - p
        for k in range(math.floor(q) + 1):
            corrections.append((-bv(q - k - 1) * recip_gamma(p - k), p - k - 1))
    elif law is CompositionLaw.DM_AFTER_DV:
        outer, inner, total = float(_integer(p, "p")), q, p + q
    elif law is CompositionLaw.DV_AFTER_DM:
        m = _integer(q, "q")
        outer, inner, total = p, float(m), p + q
        for k in range(m):
            corrections.append((-bv(k) * recip_gamma(1 + k - p - m), k - p - m))
    elif law is CompositionLaw.D_AFTER_D:
        outer, inner, total = p, q, p + q
        for k in range(math.floor(q) + 1):
            corrections.append((-bv(q - k - 1) * recip_gamma(-p - k), -p - k - 1))
    elif law is CompositionLaw.D_AFTER_D_SWAPPED:
        outer, inner, total = q, p, p + q
        for k in range(math.floor(p) + 1):
            corrections.append((-bv(p - k - 1) * recip_gamma(-q - k), -q - k - 1))
    else:
        if p < q:
            raise DomainError(f"derivative-after-integral law needs p >= q, got {p} < {q}")
        outer, inner, total = p, -q, p - q

    composed = rl_series(rl_series(s, inner), outer)
    direct = rl_series(s, total)
    # -0.0 from zero boundary values would print oddly
    corrections = [(c + 0.0, e) for c, e in corrections]
    return CompositionDefect(law, composed, direct, corrections)
