"""Independent oracles: 50-digit interval arithmetic and a brute-force ball enumerator."""

from __future__ import annotations

from fractions import Fraction

from mpmath import iv, mp

DPS = 50


def surd_interval(a: Fraction, b: Fraction, d: int):
    iv.dps = DPS
    x = iv.mpf(a.numerator) / a.denominator
    if d:
        x += iv.mpf(b.numerator) / b.denominator * iv.sqrt(d)
    return x


def interval_sign(x) -> int | None:
    """Sign of an interval, or None when it straddles zero."""
    if x.a > 0:
        return 1
    if x.b < 0:
        return -1
    if x.a == 0 and x.b == 0:
        return 0
    return None


def fixed_points_mp(a: int, b: int, c: int, d: int) -> list:
    """Finite fixed points of x -> (ax+b)/(cx+d) at 50 digits, sorted; infinity omitted."""
    mp.dps = DPS
    if c == 0:
        return [] if a == d else [mp.mpf(b) / (d - a)]
    disc = mp.mpf((d - a) ** 2 + 4 * b * c)
    r = mp.sqrt(disc)
    return sorted([(a - d - r) / (2 * c), (a - d + r) / (2 * c)])


def derivative_mp(a: int, b: int, c: int, d: int, x):
    mp.dps = DPS
    return mp.mpf(a * d - b * c) / (c * x + d) ** 2


def _reduce(word: tuple, letter: tuple) -> tuple:
    fid, exps = letter
    if word and word[-1][0] == fid:
        merged = tuple(x + y for x, y in zip(word[-1][1], exps))
        return word[:-1] if not any(merged) else word[:-1] + ((fid, merged),)
    return word + (letter,)


def brute_force_ball(ranks: dict, radius: int) -> set:
    """Elements within Cayley-graph distance `radius` of the identity, identity excluded."""
    letters = []
    for fid, rank in ranks.items():
        for i in range(rank):
            for s in (1, -1):
                letters.append((fid, tuple(s if j == i else 0 for j in range(rank))))
    seen = {()}
    frontier = {()}
    for _ in range(radius):
        nxt = set()
        for w in frontier:
            for l in letters:
                v = _reduce(w, l)
                if v not in seen:
                    seen.add(v)
                    nxt.add(v)
        frontier = nxt
    seen.discard(())
    return seen


def matrix_word(letters, assignment) -> tuple:
    """Plain integer matrix product, projectivized by gcd and sign."""
    from math import gcd
    m = (1, 0, 0, 1)
    for name, e in letters:
        a, b, c, d = assignment[name]
        if e < 0:
            a, b, c, d = d, -b, -c, a
        for _ in range(abs(e)):
            p, q, r, s = m
            m = (p * a + q * c, p * b + q * d, r * a + s * c, r * b + s * d)
    g = gcd(gcd(m[0], m[1]), gcd(m[2], m[3]))
    m = tuple(x // g for x in m)
    first = next(x for x in m if x)
    return m if first > 0 else tuple(-x for x in m)


def surd_mp(x):
    """50-digit value of a Surd."""
    mp.dps = DPS
    return mp.mpf(x.a.numerator) / x.a.denominator + mp.mpf(x.b.numerator) / x.b.denominator * mp.sqrt(x.d)
