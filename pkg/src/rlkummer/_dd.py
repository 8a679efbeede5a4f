"""Double-double arithmetic built from error-free float transformations.

Only the handful of operations needed for compensated coefficient
accumulation are provided. A value is the unevaluated sum ``hi + lo`` with
``|lo| <= ulp(hi) / 2``, giving roughly 106 bits of significand.
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    return s, b - (s - a)


def _split(a: float) -> tuple[float, float]:
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


class DD:
    __slots__ = ("hi", "lo")

    def __init__(self, hi: float = 0.0, lo: float = 0.0) -> None:
        self.hi = float(hi)
        self.lo = float(lo)

    @staticmethod
    def _coerce(x: DD | float | int) -> DD:
        return x if isinstance(x, DD) else DD(float(x))

    def __float__(self) -> float:
        return self.hi + self.lo

    def __repr__(self) -> str:
        return f"DD({self.hi!r}, {self.lo!r})"

    def __neg__(self) -> DD:
        return DD(-self.hi, -self.lo)

    def __abs__(self) -> DD:
        return -self if self.hi < 0.0 else self

    def __add__(self, other: DD | float | int) -> DD:
        o = DD._coerce(other)
        s, e = two_sum(self.hi, o.hi)
        t, f = two_sum(self.lo, o.lo)
        e += t
        s, e = _quick_two_sum(s, e)
        e += f
        return DD(*_quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other: DD | float | int) -> DD:
        return self + (-DD._coerce(other))

    def __rsub__(self, other: DD | float | int) -> DD:
        return DD._coerce(other) - self

    def __mul__(self, other: DD | float | int) -> DD:
        o = DD._coerce(other)
        p, e = two_prod(self.hi, o.hi)
        e += self.hi * o.lo + self.lo * o.hi
        return DD(*_quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other: DD | float | int) -> DD:
        o = DD._coerce(other)
        q1 = self.hi / o.hi
        r = self - o * q1
        q2 = r.hi / o.hi
        r = r - o * q2
        q3 = r.hi / o.hi
        q1, q2 = _quick_two_sum(q1, q2)
        return DD(q1, q2) + q3

    def __rtruediv__(self, other: DD | float | int) -> DD:
        return DD._coerce(other) / self

    def is_zero(self) -> bool:
        return self.hi == 0.0


def dd_sum(values) -> DD:
    acc = DD()
    for v in values:
        acc = acc + v
    return acc
