"""Generalized power series :math:`\\sum_k c_k (x-a)^{\\mu+k}`.

A :class:`GenPowerSeries` is either *exact* (a finite sum; every coefficient
past the stored ones is zero) or *truncated* (coefficients past the stored
ones are unknown). The distinction matters for products and sums: only
coefficients whose full convolution is known are kept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from rlkummer.errors import DomainError
from rlkummer.gamma import INTEGER_TOL, nearest_integer


@dataclass(frozen=True)
class GenPowerSeries:
    """Truncated expansion ``sum_k coeffs[k] * (x - base_point)**(offset + k)``.

    Construction normalizes: leading zero coefficients are stripped into the
    offset, so ``coeffs[0] != 0`` unless the series is identically zero (whose
    offset is then ``0``). Offsets within :data:`~rlkummer.gamma.INTEGER_TOL`
    of an integer are snapped to it.
    """

    coeffs: tuple[float, ...]
    offset: float = 0.0
    base_point: float = 0.0
    truncated: bool = False

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs) or (0.0,)
        if not all(math.isfinite(c) for c in coeffs):
            raise DomainError("series coefficients must be finite")
        offset = float(self.offset)
        if not (math.isfinite(offset) and math.isfinite(self.base_point)):
            raise DomainError("offset and base point must be finite")

        lead = next((i for i, c in enumerate(coeffs) if c != 0.0), None)
        if lead is None:
            coeffs, offset, truncated = (0.0,), 0.0, False
        else:
            coeffs, offset, truncated = coeffs[lead:], offset + lead, self.truncated

        n = nearest_integer(offset, INTEGER_TOL)
        if n is not None:
            offset = float(n)

        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "base_point", float(self.base_point))
        object.__setattr__(self, "truncated", bool(truncated))

    # {{{ properties

    @property
    def order(self) -> int:
        """Truncation order ``N``; there are ``N + 1`` stored coefficients."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0.0,)

    @property
    def exponents(self) -> list[float]:
        return [self.offset + k for k in range(len(self.coeffs))]

    @property
    def horizon(self) -> float:
        """Exponent of the first unknown term (``inf`` for exact series)."""
        return self.offset + len(self.coeffs) if self.truncated else math.inf

    @property
    def has_integer_offset(self) -> bool:
        return nearest_integer(self.offset, INTEGER_TOL) is not None

    # }}}

    # {{{ arithmetic

    def __neg__(self) -> GenPowerSeries:
        return self.scaled(-1.0)

    def __add__(self, other: GenPowerSeries) -> GenPowerSeries:
        if not isinstance(other, GenPowerSeries):
            return NotImplemented
        return gps_add(self, other)

    def __sub__(self, other: GenPowerSeries) -> GenPowerSeries:
        if not isinstance(other, GenPowerSeries):
            return NotImplemented
        return gps_add(self, -other)

    def __mul__(self, other: Any) -> GenPowerSeries:
        if isinstance(other, GenPowerSeries):
            return gps_mul(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self.scaled(float(other))
        return NotImplemented

    def __rmul__(self, other: Any) -> GenPowerSeries:
        return self.__mul__(other)

    def scaled(self, factor: float) -> GenPowerSeries:
        if factor == 0.0:
            return zero_series(self.base_point)
        return GenPowerSeries(
            tuple(factor * c for c in self.coeffs),
            self.offset,
            self.base_point,
            self.truncated,
        )

    # }}}

    def __call__(self, x: Any) -> Any:
        if np.ndim(x) == 0:
            return gps_eval(self, float(x))
        return np.array([gps_eval(self, float(xi)) for xi in np.ravel(x)]).reshape(
            np.shape(x)
        )

    def coefficient(self, exponent: float) -> float:
        """Coefficient of ``(x-a)**exponent`` (zero if absent and known)."""
        k = nearest_integer(exponent - self.offset, INTEGER_TOL)
        if k is None:
            raise DomainError(
                f"exponent {exponent} is not on the lattice offset={self.offset} + k"
            )
        if k < 0:
            return 0.0
        if k >= len(self.coeffs):
            if self.truncated:
                raise DomainError(f"exponent {exponent} lies past the truncation order")
            return 0.0
        return self.coeffs[k]

    def to_dict(self) -> dict[str, Any]:
        return {
            "base_point": self.base_point,
            "offset": self.offset,
            "coeffs": list(self.coeffs),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> GenPowerSeries:
        return cls(
            tuple(d["coeffs"]),
            offset=d.get("offset", 0.0),
            base_point=d.get("base_point", 0.0),
            truncated=d.get("truncated", False),
        )


def zero_series(base_point: float = 0.0) -> GenPowerSeries:
    return GenPowerSeries((0.0,), 0.0, base_point)


def monomial(
    exponent: float, coeff: float = 1.0, base_point: float = 0.0
) -> GenPowerSeries:
    """Exact one-term series ``coeff * (x - base_point)**exponent``."""
    return GenPowerSeries((coeff,), exponent, base_point)


def polynomial(coeffs: Any, base_point: float = 0.0) -> GenPowerSeries:
    """Exact series ``sum_k coeffs[k] * (x - base_point)**k``."""
    return GenPowerSeries(tuple(coeffs), 0.0, base_point)


def exp_series(order: int) -> GenPowerSeries:
    """Truncated Taylor series of ``exp(x)`` about 0 up to ``x**order``."""
    if order < 0:
        raise DomainError(f"order must be nonnegative, got {order}")
    return GenPowerSeries(
        tuple(1 / math.factorial(k) for k in range(order + 1)), truncated=True
    )


def gps_eval(s: GenPowerSeries, x: float) -> float:
    """Evaluate the series at *x* with correctly rounded summation of the terms."""
    t = x - s.base_point
    if t > 0.0:
        return math.fsum(c * t ** (s.offset + k) for k, c in enumerate(s.coeffs))
    if s.is_zero:
        return 0.0
    if not s.has_integer_offset:
        raise DomainError(
            f"fractional exponents need x > base point, got x={x} (a={s.base_point})"
        )
    mu = round(s.offset)
    if t == 0.0 and mu < 0:
        raise DomainError(f"negative power (x-a)**{mu} at x = a")
    return math.fsum(c * t ** (mu + k) for k, c in enumerate(s.coeffs))


def _check_base(s: GenPowerSeries, t: GenPowerSeries) -> None:
    if s.base_point != t.base_point:
        raise DomainError(
            f"mismatched base points {s.base_point} and {t.base_point}"
        )


def gps_mul(s: GenPowerSeries, t: GenPowerSeries) -> GenPowerSeries:
    """Cauchy product; keeps only coefficients with a complete convolution sum."""
    _check_base(s, t)
    if s.is_zero or t.is_zero:
        return zero_series(s.base_point)

    ls, lt = len(s.coeffs), len(t.coeffs)
    if s.truncated and t.truncated:
        length = min(ls, lt)
    elif s.truncated:
        length = ls
    elif t.truncated:
        length = lt
    else:
        length = ls + lt - 1

    a, b = s.coeffs, t.coeffs
    out = []
    for j in range(length):
        lo, hi = max(0, j - lt + 1), min(j, ls - 1)
        out.append(math.fsum(a[i] * b[j - i] for i in range(lo, hi + 1)))

    return GenPowerSeries(
        tuple(out), s.offset + t.offset, s.base_point, s.truncated or t.truncated
    )


def gps_add(s: GenPowerSeries, t: GenPowerSeries) -> GenPowerSeries:
    """Sum of two series whose offsets differ by an integer."""
    _check_base(s, t)
    if s.is_zero:
        return t
    if t.is_zero:
        return s

    shift = nearest_integer(t.offset - s.offset, INTEGER_TOL)
    if shift is None:
        raise DomainError(
            f"offsets {s.offset} and {t.offset} do not differ by an integer"
        )
    if shift < 0:
        s, t, shift = t, s, -shift

    base = s.offset
    end = max(len(s.coeffs), shift + len(t.coeffs))
    horizon = min(s.horizon, t.horizon)
    if math.isfinite(horizon):
        end = min(end, round(horizon - base))

    out = [0.0] * max(end, 0)
    for k, c in enumerate(s.coeffs[:end]):
        out[k] += c
    for k, c in enumerate(t.coeffs):
        if shift + k < end:
            out[shift + k] += c

    return GenPowerSeries(
        tuple(out), base, s.base_point, s.truncated or t.truncated
    )


def diff(s: GenPowerSeries, k: int = 1) -> GenPowerSeries:
    """Classical *k*-th derivative, term by term."""
    if k < 0:
        raise DomainError(f"derivative order must be nonnegative, got {k}")
    if k == 0 or s.is_zero:
        return s

    out = []
    for j, c in enumerate(s.coeffs):
        e = s.offset + j
        factor = 1.0
        for i in range(k):
            factor *= e - i
        out.append(c * factor)

    return GenPowerSeries(tuple(out), s.offset - k, s.base_point, s.truncated)
