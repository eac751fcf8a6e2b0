"""Exact complex rationals and certified complex disks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import mpmath


@dataclass(frozen=True)
class QQi:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def coerce(cls, v) -> QQi:
        if isinstance(v, QQi):
            return v
        if isinstance(v, tuple):
            return cls(Fraction(v[0]), Fraction(v[1]))
        return cls(Fraction(v), Fraction(0))

    @classmethod
    def from_mpc(cls, z) -> QQi:
        # no mpc()/mpf() round trip: that would round to the ambient precision
        return cls(_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag))

    def __add__(self, o) -> QQi:
        o = QQi.coerce(o)
        return QQi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o) -> QQi:
        o = QQi.coerce(o)
        return QQi(self.re - o.re, self.im - o.im)

    def __rsub__(self, o) -> QQi:
        return QQi.coerce(o) - self

    def __neg__(self) -> QQi:
        return QQi(-self.re, -self.im)

    def __mul__(self, o) -> QQi:
        o = QQi.coerce(o)
        return QQi(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o) -> QQi:
        o = QQi.coerce(o)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return QQi(num.re / d, num.im / d)

    def conjugate(self) -> QQi:
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_mpc(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)


def _mpf_to_fraction(x) -> Fraction:
    if not isinstance(x, mpmath.mpf):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(int(man) << exp)
    return Fraction(int(man), 1 << -exp)


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits``."""
    if q < 0:
        raise ValueError("negative square root")
    scale = 1 << bits
    # floor(sqrt(q) * scale) via integer square root of floor(q * scale^2)
    t = (q.numerator * scale * scale) // q.denominator
    s = isqrt(t)
    lo = Fraction(s, scale)
    hi = Fraction(s + 1, scale)
    return lo, hi


def sqrt_upper(q: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[1]


def sqrt_lower(q: Fraction, bits: int = 64) -> Fraction:
    return sqrt_bounds(q, bits)[0]


@dataclass(frozen=True)
class ComplexBall:
    """Closed disk ``{z : |z - center| <= radius}`` with exact rational data."""

    center: QQi
    radius: Fraction

    def contains_point(self, z: QQi) -> bool:
        return (z - self.center).abs2() <= self.radius * self.radius

    def intersects(self, other: ComplexBall) -> bool:
        r = self.radius + other.radius
        return (self.center - other.center).abs2() <= r * r

    def contains_ball(self, other: ComplexBall) -> bool:
        if other.radius > self.radius:
            return False
        r = self.radius - other.radius
        return (self.center - other.center).abs2() <= r * r

    def conjugate(self) -> ComplexBall:
        return ComplexBall(self.center.conjugate(), self.radius)

    def abs_bounds(self, bits: int | None = None) -> tuple[Fraction, Fraction]:
        """Certified bounds on ``|z|`` for every ``z`` in the disk."""
        if bits is None:
            bits = max(64, self.radius.denominator.bit_length() - self.radius.numerator.bit_length() + 8)
        lo, hi = sqrt_bounds(self.center.abs2(), bits)
        return max(Fraction(0), lo - self.radius), hi + self.radius

    def abs2_bounds(self, bits: int | None = None) -> tuple[Fraction, Fraction]:
        lo, hi = self.abs_bounds(bits)
        return lo * lo, hi * hi

    def real_bounds(self) -> tuple[Fraction, Fraction]:
        return self.center.re - self.radius, self.center.re + self.radius

    def __add__(self, other: ComplexBall) -> ComplexBall:
        return ComplexBall(self.center + other.center, self.radius + other.radius)

    def __mul__(self, other: ComplexBall) -> ComplexBall:
        a = sqrt_upper(self.center.abs2())
        b = sqrt_upper(other.center.abs2())
        r = a * other.radius + b * self.radius + self.radius * other.radius
        return ComplexBall(self.center * other.center, r)

    def to_complex(self) -> complex:
        return self.center.to_complex()

    def __repr__(self) -> str:
        z = self.to_complex()
        return f"ComplexBall({z.real:.12g}{z.imag:+.12g}j, r={float(self.radius):.3g})"


RootBox = ComplexBall
