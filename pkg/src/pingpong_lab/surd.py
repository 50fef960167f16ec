"""Exact quadratic surds a + b*sqrt(d) with rational a, b."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=4096)
def split_square(n: int) -> tuple[int, int]:
    """Write n >= 0 as k*k*m with m square-free; returns (k, m)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    k, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    return k, m * n


def is_square_free(n: int) -> bool:
    return n >= 1 and split_square(n)[1] == n


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign3(a: Fraction, b: Fraction, m: int, c: Fraction, n: int) -> int:
    """Exact sign of a + b*sqrt(m) + c*sqrt(n) for square-free m, n (0 allowed)."""
    if m == 0:
        b = Fraction(0)
    if n == 0:
        c = Fraction(0)
    if m == 1:
        a, b = a + b, Fraction(0)
    if n == 1:
        a, c = a + c, Fraction(0)
    if m == n:
        b, c = b + c, Fraction(0)
    # now at most b*sqrt(m) and c*sqrt(n) remain
    if b == 0 and c == 0:
        return _sign(a)
    if b == 0:
        b, m, c, n = c, n, Fraction(0), 0
    if c == 0:
        sa, sb = _sign(a), _sign(b)
        if sa == 0 or sa == sb:
            return sb if sb else sa
        return sa * _sign(a * a - b * b * m)
    # irrational part s = b*sqrt(m) + c*sqrt(n), distinct radicands
    sb, sc = _sign(b), _sign(c)
    ss = sb if sb == sc else sb * _sign(b * b * m - c * c * n)
    sa = _sign(a)
    if sa == 0 or sa == ss:
        return ss if ss else sa
    if ss == 0:
        return sa
    # opposite signs: compare a^2 with s^2 = b^2 m + c^2 n + 2bc sqrt(mn)
    k, r = split_square(m * n)
    t = a * a - b * b * m - c * c * n
    return sa * sign3(t, -2 * b * c * k, r, Fraction(0), 0)


# Filtered comparisons: each approximation carries absolute error at most a few
# ulps of its scale, so a float gap beyond FILTER * scale decides the sign
# exactly; anything closer falls through to rational arithmetic.
FILTER = 1e-12
TINY = 1e-300


class Surd:
    """The real number a + b*sqrt(d), kept in canonical form."""

    __slots__ = ("a", "b", "d", "_approx", "_scale")

    def __init__(self, a: Rational = 0, b: Rational = 0, d: int = 0):
        a, b = Fraction(a), Fraction(b)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if d and b:
            k, m = split_square(d)
            b *= k
            d = m
            if d == 1:
                a, b, d = a + b, Fraction(0), 0
        else:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        # float value plus a magnitude that bounds its rounding error (see cmp)
        try:
            fa = float(a)
            fb = float(b) * d ** 0.5 if d else 0.0
            approx, scale = fa + fb, abs(fa) + abs(fb)
        except OverflowError:
            approx, scale = 0.0, float("inf")
        object.__setattr__(self, "_approx", approx)
        object.__setattr__(self, "_scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("Surd is immutable")

    @classmethod
    def sqrt(cls, r: Rational) -> "Surd":
        r = Fraction(r)
        if r < 0:
            raise ValueError("square root of a negative number")
        k, m = split_square(r.numerator * r.denominator)
        return cls(0, Fraction(k, r.denominator), m)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def sign(self) -> int:
        if abs(self._approx) > FILTER * self._scale + TINY:
            return 1 if self._approx > 0 else -1
        return sign3(self.a, self.b, self.d, Fraction(0), 0)

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def _field(self, other: "Surd") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"mixed radicands {self.d} and {other.d}")
        return self.d or other.d

    def __add__(self, other):
        other = as_surd(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return Surd(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = as_surd(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_surd(other)
        if other is NotImplemented:
            return other
        d = self._field(other)
        return Surd(self.a * other.a + self.b * other.b * d,
                    self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return Surd(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = as_surd(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_surd(other) * self.inverse()

    def cmp(self, other) -> int:
        other = as_surd(other)
        diff = self._approx - other._approx
        if abs(diff) > FILTER * (self._scale + other._scale) + TINY:
            return 1 if diff > 0 else -1
        return sign3(self.a - other.a, self.b, self.d, -other.b, other.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Surd(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return (self.a, self.b, self.d) == (other.a, other.b, other.d)

    def __hash__(self):
        if self.d == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __float__(self):
        return self._approx

    def to_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.a.numerator, self.a.denominator,
                self.b.numerator, self.b.denominator, self.d)

    @classmethod
    def from_tuple(cls, t) -> "Surd":
        an, ad, bn, bd, d = t
        return cls(Fraction(an, ad), Fraction(bn, bd), d)

    def __repr__(self):
        return f"Surd({self})"

    def __str__(self):
        if self.d == 0:
            return str(self.a)
        rad = f"sqrt({self.d})" if self.b == 1 else f"{self.b}*sqrt({self.d})"
        if self.a == 0:
            return rad if self.b != -1 else f"-sqrt({self.d})"
        sep = "+" if self.b > 0 else "-"
        mag = -self.b if self.b < 0 else self.b
        rad = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        return f"{self.a}{sep}{rad}"


def as_surd(x):
    if isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd(x)
    return NotImplemented


def surd_sign(x: Surd) -> int:
    return x.sign()
