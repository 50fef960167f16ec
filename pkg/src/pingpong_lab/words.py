"""Normal forms in free products of free abelian groups, word balls, and evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping, Optional, Sequence

from .errors import FactorNotAbelian
from .moebius import IDENTITY, MapClass, MoebiusMap, classify, commutes

Syllable = tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class FactorSpec:
    factor_id: str
    generators: tuple[str, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError(f"factor {self.factor_id} needs at least one generator")

    @property
    def rank(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class NormalWord:
    syllables: tuple[Syllable, ...] = ()

    @classmethod
    def of(cls, *syllables) -> "NormalWord":
        """Build from (factor_id, exponents) pairs, reducing as it goes."""
        w = cls()
        for fid, exps in syllables:
            if isinstance(exps, int):
                exps = (exps,)
            w = w * cls(((fid, tuple(exps)),)) if any(exps) else w
        return w

    def __mul__(self, other: "NormalWord") -> "NormalWord":
        return multiply(self, other)

    def inverse(self) -> "NormalWord":
        return NormalWord(tuple((fid, tuple(-e for e in exps))
                                for fid, exps in reversed(self.syllables)))

    @property
    def length(self) -> int:
        return sum(abs(e) for _, exps in self.syllables for e in exps)

    def is_identity(self) -> bool:
        return not self.syllables

    def format(self, factors: Optional[Sequence[FactorSpec]] = None) -> str:
        if not self.syllables:
            return "1"
        names = {f.factor_id: f.generators for f in factors or ()}
        parts = []
        for fid, exps in self.syllables:
            gens = names.get(fid)
            if gens is None or len(gens) != len(exps):
                parts.append(f"{fid}{list(exps)}")
                continue
            parts.extend(f"{g}^{e}" if e != 1 else g for g, e in zip(gens, exps) if e)
        return " ".join(parts)

    def __str__(self):
        return self.format()


def multiply(u: NormalWord, v: NormalWord) -> NormalWord:
    left = list(u.syllables)
    right = list(v.syllables)
    while left and right and left[-1][0] == right[0][0]:
        fid = left[-1][0]
        merged = tuple(x + y for x, y in zip(left[-1][1], right[0][1]))
        left.pop()
        right.pop(0)
        if any(merged):
            left.append((fid, merged))
            break
    return NormalWord(tuple(left + right))


@lru_cache(maxsize=None)
def vectors_of_norm(rank: int, norm: int) -> tuple[tuple[int, ...], ...]:
    """All integer vectors of the given rank with l1-norm exactly `norm`, sorted."""
    if rank == 1:
        return ((-norm,), (norm,)) if norm else ((0,),)
    out = []
    for first in range(-norm, norm + 1):
        for rest in vectors_of_norm(rank - 1, norm - abs(first)):
            out.append((first,) + rest)
    return tuple(sorted(out))


def _words_of_length(factors: Sequence[FactorSpec], length: int,
                     banned: Optional[str] = None) -> list[NormalWord]:
    out = []
    for factor in factors:
        if factor.factor_id == banned:
            continue
        for m in range(1, length + 1):
            for vec in vectors_of_norm(factor.rank, m):
                head = (factor.factor_id, vec)
                if m == length:
                    out.append(NormalWord((head,)))
                else:
                    for tail in _words_of_length(factors, length - m, factor.factor_id):
                        out.append(NormalWord((head,) + tail.syllables))
    return out


def _zigzag(e: int) -> int:
    # 0, 1, -1, 2, -2, ... so positive powers precede their inverses
    return 2 * e - 1 if e > 0 else -2 * e


def word_key(factors: Sequence[FactorSpec], w: NormalWord):
    index = {f.factor_id: i for i, f in enumerate(factors)}
    return tuple((index[fid], tuple(_zigzag(e) for e in exps)) for fid, exps in w.syllables)


def ball(factors: Sequence[FactorSpec], radius: int) -> Iterator[NormalWord]:
    """All nontrivial normal words of length at most `radius`.

    Order is by length, then lexicographic on (factor position, exponents), with
    exponents ranked 1, -1, 2, -2, ... inside each syllable.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    ids = [f.factor_id for f in factors]
    if len(set(ids)) != len(ids):
        raise ValueError("factor ids must be distinct")
    for length in range(1, radius + 1):
        words = _words_of_length(factors, length)
        words.sort(key=lambda w: word_key(factors, w))
        yield from words


def check_abelian(factors: Sequence[FactorSpec], assignment: Mapping[str, MoebiusMap]) -> None:
    for factor in factors:
        for g in factor.generators:
            if g not in assignment:
                raise KeyError(f"generator {g} has no assigned map")
        for x, y in combinations(factor.generators, 2):
            if not commutes(assignment[x], assignment[y]):
                raise FactorNotAbelian(
                    f"generators {x} and {y} of factor {factor.factor_id} do not commute")


class Evaluator:
    """Evaluates words into Möbius maps, caching syllables and suffixes."""

    def __init__(self, factors: Sequence[FactorSpec], assignment: Mapping[str, MoebiusMap]):
        check_abelian(factors, assignment)
        self.factors = {f.factor_id: f for f in factors}
        self.assignment = dict(assignment)
        self._syllables: dict[Syllable, MoebiusMap] = {}
        self._words: dict[tuple, MoebiusMap] = {(): IDENTITY}

    def syllable(self, syl: Syllable) -> MoebiusMap:
        m = self._syllables.get(syl)
        if m is None:
            fid, exps = syl
            m = IDENTITY
            for gen, e in zip(self.factors[fid].generators, exps):
                if e:
                    m = m * self.assignment[gen] ** e
            self._syllables[syl] = m
        return m

    def __call__(self, w: NormalWord) -> MoebiusMap:
        syls = w.syllables
        m = self._words.get(syls)
        if m is None:
            m = self.syllable(syls[0]) * self(NormalWord(syls[1:]))
            self._words[syls] = m
        return m


def evaluate(w: NormalWord, factors: Sequence[FactorSpec],
             assignment: Mapping[str, MoebiusMap]) -> MoebiusMap:
    return Evaluator(factors, assignment)(w)


@dataclass(frozen=True)
class HLCertificate:
    radius: int
    certified: bool
    witness: Optional[NormalWord] = None
    witness_class: Optional[MapClass] = None
    checked: int = 0

    @property
    def status(self) -> str:
        return "Certified" if self.certified else "Refuted"


def certify_hyperbolic_like(factors: Sequence[FactorSpec],
                            assignment: Mapping[str, MoebiusMap],
                            radius: int) -> HLCertificate:
    ev = Evaluator(factors, assignment)
    checked = 0
    for w in ball(factors, radius):
        checked += 1
        cls = classify(ev(w))
        if cls is not MapClass.HYPERBOLIC:
            return HLCertificate(radius, False, w, cls, checked)
    return HLCertificate(radius, True, checked=checked)


def free_pair(h: MoebiusMap, f: MoebiusMap) -> tuple[list[FactorSpec], dict[str, MoebiusMap]]:
    """Presentation Z * Z generated by h and f."""
    return [FactorSpec("H", ("h",)), FactorSpec("K", ("f",))], {"h": h, "f": f}
