"""Integer Möbius transformations of the projective line."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .circle import INF, CirclePoint, point, same
from .errors import NotHyperbolic
from .surd import Surd


class MapClass(enum.Enum):
    IDENTITY = "Identity"
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class FixedPair:
    attracting: CirclePoint
    repelling: CirclePoint

    def swapped(self) -> "FixedPair":
        return FixedPair(self.repelling, self.attracting)


def _canonical(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    g = gcd(gcd(a, b), gcd(c, d))
    if g == 0:
        raise ValueError("zero matrix")
    entries = [a // g, b // g, c // g, d // g]
    lead = next(x for x in entries if x)
    if lead < 0:
        entries = [-x for x in entries]
    return tuple(entries)


@dataclass(frozen=True, init=False)
class MoebiusMap:
    """x -> (a x + b) / (c x + d) with ad - bc > 0, stored in lowest terms."""

    a: int
    b: int
    c: int
    d: int

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c <= 0:
            raise ValueError(f"determinant of [{a}, {b}, {c}, {d}] must be positive")
        for name, v in zip("abcd", _canonical(a, b, c, d)):
            object.__setattr__(self, name, v)

    @classmethod
    def of(cls, m: Sequence) -> "MoebiusMap":
        """Build from [a, b, c, d] or [[a, b], [c, d]]."""
        if len(m) == 2:
            (a, b), (c, d) = m
        else:
            a, b, c, d = m
        return cls(int(a), int(b), int(c), int(d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: (g * h)(x) = g(h(x))."""
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return MoebiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "MoebiusMap":
        base = self if n >= 0 else self.inverse()
        result = IDENTITY
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x) -> CirclePoint:
        return apply(self, x)

    def __str__(self):
        return f"[{self.a}, {self.b}, {self.c}, {self.d}]"


IDENTITY = MoebiusMap(1, 0, 0, 1)


def apply(g: MoebiusMap, x) -> CirclePoint:
    x = point(x)
    if x is INF:
        return INF if g.c == 0 else Surd(Fraction(g.a, g.c))
    den = g.c * x + g.d
    if den.sign() == 0:
        return INF
    return (g.a * x + g.b) / den


def discriminant(g: MoebiusMap) -> int:
    return g.trace ** 2 - 4 * g.det


def classify(g: MoebiusMap) -> MapClass:
    if g.b == 0 and g.c == 0 and g.a == g.d:
        return MapClass.IDENTITY
    s = discriminant(g)
    if s > 0:
        return MapClass.HYPERBOLIC
    if s == 0:
        return MapClass.PARABOLIC
    return MapClass.ELLIPTIC


def is_hyperbolic(g: MoebiusMap) -> bool:
    return classify(g) is MapClass.HYPERBOLIC


def fixed_pair(g: MoebiusMap) -> FixedPair:
    if not is_hyperbolic(g):
        raise NotHyperbolic(f"{g} is {classify(g).value}")
    a, b, c, d = g.entries()
    if c == 0:
        finite = Surd(Fraction(b, d - a))
        # derivative at the finite fixed point is a/d
        if a * a > d * d:
            return FixedPair(INF, finite)
        return FixedPair(finite, INF)
    root = Surd.sqrt(discriminant(g))
    x1 = (Surd(a - d) + root) / (2 * c)
    x2 = (Surd(a - d) - root) / (2 * c)
    # attracting where (c x + d)^2 > det, i.e. the derivative is below 1
    k1 = c * x1 + d
    if (k1 * k1).cmp(g.det) > 0:
        return FixedPair(x1, x2)
    return FixedPair(x2, x1)


def fixed_points(g: MoebiusMap) -> tuple[CirclePoint, CirclePoint]:
    fp = fixed_pair(g)
    return fp.attracting, fp.repelling


def commutator(g: MoebiusMap, h: MoebiusMap) -> MoebiusMap:
    """[g, h] = g h g^-1 h^-1."""
    return g * h * g.inverse() * h.inverse()


def shares_fixed_point(g: MoebiusMap, h: MoebiusMap) -> bool:
    k = commutator(g, h)
    # projectively a determinant-one commutator with trace +-2
    return k.trace ** 2 == 4 * k.det


def commutes(g: MoebiusMap, h: MoebiusMap) -> bool:
    return g * h == h * g


def translation_length_key(g: MoebiusMap) -> Fraction:
    """tr^2/det, a conjugation-invariant that grows with translation length."""
    return Fraction(g.trace ** 2, g.det)


def fixed_pair_equal(p: FixedPair, q: FixedPair) -> bool:
    return same(p.attracting, q.attracting) and same(p.repelling, q.repelling)
