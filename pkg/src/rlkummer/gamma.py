"""Gamma-function kernels.

The reciprocal gamma function is the primitive here because it is entire:
dividing by :math:`\\Gamma` at a pole simply gives zero, which is exactly what
the power rule needs when a term is annihilated. :func:`gamma` itself is only
offered as a derived helper and refuses to evaluate at poles.
"""

from __future__ import annotations

import math

from rlkummer.errors import DomainError

#: Absolute distance below which a float is treated as an integer when
#: classifying poles of the gamma function.
INTEGER_TOL = 1.0e-12


def nearest_integer(z: float, tol: float = INTEGER_TOL) -> int | None:
    """Return ``round(z)`` if *z* is within *tol* of it, else ``None``."""
    n = round(z)
    if abs(z - n) <= tol * max(1.0, abs(z)):
        return int(n)
    return None


def is_nonpositive_integer(z: float, tol: float = 0.0) -> bool:
    """True if *z* is a pole of :math:`\\Gamma`, i.e. in ``{0, -1, -2, ...}``."""
    n = nearest_integer(z, tol) if tol > 0 else (int(z) if z == int(z) else None)
    return n is not None and n <= 0


def sinpi(z: float) -> float:
    r"""Compute :math:`\sin(\pi z)` with exact argument reduction."""
    n = round(z)
    r = z - n  # exact for |z| < 2**52
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def recip_gamma(z: float) -> float:
    r"""Reciprocal gamma function :math:`1/\Gamma(z)`.

    Total on the reals: exactly ``0.0`` at the poles ``z = 0, -1, -2, ...``
    and ``0.0`` where :math:`\Gamma` overflows (``z > 171.6``). Relative
    accuracy is a few ulp away from the poles.
    """
    if not math.isfinite(z):
        raise DomainError(f"recip_gamma needs a finite argument, got {z!r}")
    if z <= 0.0 and z == math.floor(z):
        return 0.0
    try:
        g = math.gamma(z)
    except OverflowError:
        if z > 0:
            return 0.0
        g = 0.0
    if g == 0.0:
        # Gamma underflowed far out on the negative axis; use reflection.
        try:
            return sinpi(z) * math.gamma(1.0 - z) / math.pi
        except OverflowError:
            return math.copysign(math.inf, sinpi(z))
    return 1.0 / g


def gamma(z: float) -> float:
    """Gamma function; raises :class:`DomainError` at the poles."""
    if z <= 0.0 and z == math.floor(z):
        raise DomainError(f"gamma has a pole at z={z!r}")
    return math.gamma(z)


def gamma_ratio(x: float, y: float) -> float:
    r"""Return :math:`\Gamma(x)/\Gamma(y)`, zero when *y* is a pole.

    Falls back to log-gamma differences when either gamma overflows.
    """
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"gamma_ratio numerator has a pole at x={x!r}")
    ry = recip_gamma(y)
    if ry == 0.0 and y <= 0.0 and y == math.floor(y):
        return 0.0
    if abs(x) < 170.0 and abs(y) < 170.0:
        return math.gamma(x) * ry
    sign = _gamma_sign(x) * _gamma_sign(y)
    return sign * math.exp(math.lgamma(x) - math.lgamma(y))


def _gamma_sign(z: float) -> float:
    if z > 0.0:
        return 1.0
    return -1.0 if math.floor(z) % 2 else 1.0


def gamma_reflection(z: float) -> float:
    r"""Return :math:`\Gamma(z)\Gamma(1-z) = \pi/\sin(\pi z)` for non-integer *z*."""
    s = sinpi(z)
    if s == 0.0:
        raise DomainError(f"reflection product has a pole at integer z={z!r}")
    return math.pi / s


def pochhammer(z: float, n: int) -> float:
    """Rising factorial ``z (z+1) ... (z+n-1)`` by direct product; ``(z)_0 = 1``."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    acc = 1.0
    for j in range(n):
        acc *= z + j
    return acc


def gen_binomial(nu: float, k: int) -> float:
    """Generalized binomial coefficient ``nu (nu-1) ... (nu-k+1) / k!``.

    The running value is always the binomial coefficient of the prefix, so
    for integer *nu* every intermediate is an integer and the result is exact.
    """
    if k < 0:
        raise DomainError(f"gen_binomial needs k >= 0, got {k}")
    acc = 1.0
    for j in range(k):
        acc = (acc * (nu - j)) / (j + 1)
    return acc
