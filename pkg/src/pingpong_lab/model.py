"""Combinatorial realization of <H, K> with dense translation stabilizers.

Points of the model are orbit points w.b where b is one of the four special
points P, Pbar, Q, Qbar (fixed by H resp. K) or a gap boundary point.  A layout
describes where things sit: the circle is a cyclic list of slots, and every
seed gap (a gap of one special point, moved as a block by its stabilizer) has
its own list of slots.  A slot is a boundary point, a special point, or a
chart band: all images s(S) of seeds S of one factor whose chart value
address(S) + lambda(s) falls in an open interval.  Circular order is read off
a lexicographic key built by descending through bands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .circle import Arc, CirclePoint
from .errors import NotDense, PreconditionViolated
from .surd import Surd
from .words import FactorSpec, NormalWord

SPECIALS = ("P", "Pbar", "Q", "Qbar")
STABILIZER = {"P": "H", "Pbar": "H", "Q": "K", "Qbar": "K"}
ALIASES = {"G_p": "P", "G_pbar": "Pbar", "G_q": "Q", "G_qbar": "Qbar"}
OTHER = {"H": "K", "K": "H"}


@dataclass(frozen=True)
class TranslationGroup:
    """The subgroup Z*tau1 + Z*tau2 of the reals."""

    tau1: Surd
    tau2: Surd

    def __post_init__(self):
        for t in (self.tau1, self.tau2):
            if t.sign() <= 0:
                raise ValueError("translation generators must be positive")
        if self.tau1.d and self.tau2.d and self.tau1.d != self.tau2.d:
            raise ValueError("generators must lie in one quadratic field")

    @property
    def is_dense(self) -> bool:
        return not (self.tau2 / self.tau1).is_rational

    def value(self, vec: Sequence[int]) -> Surd:
        m, n = vec
        return m * self.tau1 + n * self.tau2

    def coordinates(self, lam: Surd) -> Optional[tuple[int, int]]:
        """Integers (m, n) with m*tau1 + n*tau2 = lam, or None."""
        d = self.tau1.d or self.tau2.d or lam.d
        if lam.d and d and lam.d != d:
            return None
        a1, b1 = self.tau1.a, self.tau1.b
        a2, b2 = self.tau2.a, self.tau2.b
        det = a1 * b2 - a2 * b1
        if det == 0:
            raise ValueError("coordinates need a dense group")
        m = (lam.a * b2 - a2 * lam.b) / det
        n = (a1 * lam.b - lam.a * b1) / det
        if m.denominator == 1 and n.denominator == 1:
            return int(m), int(n)
        return None

    def contains(self, lam: Surd) -> bool:
        return self.coordinates(lam) is not None

    def __str__(self):
        return f"Z*{self.tau1} + Z*{self.tau2}"


def require_dense(group: TranslationGroup, name: str = "") -> None:
    if not group.is_dense:
        raise NotDense(f"translation group {name} {group} is cyclic: ratio "
                       f"{group.tau2 / group.tau1} is rational")


# ---- layout slots -----------------------------------------------------------

@dataclass(frozen=True)
class Band:
    factor: str
    side: str          # "R" or "L" side of the factor's repelling point
    lo: Optional[Surd]  # None is -infinity
    hi: Optional[Surd]  # None is +infinity
    ascending: bool

    def holds(self, chart: Surd) -> bool:
        return (self.lo is None or chart > self.lo) and (self.hi is None or chart < self.hi)

    def label(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{self.factor}{self.side}({lo},{hi})"


@dataclass(frozen=True)
class Slot:
    kind: str                  # "B" boundary, "X" special, "L"/"R" seed endpoints, "band"
    name: str = ""
    band: Optional[Band] = None

    def __str__(self):
        return self.band.label() if self.band else f"{self.kind}:{self.name}"


def B(name):
    return Slot("B", name)


def X(name):
    return Slot("X", name)


def band(factor, side, lo, hi, ascending=True):
    to_surd = (lambda v: None if v is None else Surd(v) if not isinstance(v, Surd) else v)
    return Slot("band", band=Band(factor, side, to_surd(lo), to_surd(hi), ascending))


@dataclass(frozen=True)
class Seed:
    name: str
    factor: str          # the factor moving this gap as a block
    side: str
    address: Surd
    arc: Arc             # position on the model circle
    content: tuple[Slot, ...]


@dataclass(frozen=True)
class VirtualPoint:
    word: NormalWord
    base: str

    def format(self, factors: Optional[Sequence[FactorSpec]] = None) -> str:
        if self.word.is_identity():
            return self.base
        return f"{self.word.format(factors)} . {self.base}"

    def __str__(self):
        return self.format()


@dataclass
class ModelConfig:
    arrangement: str
    groups: dict            # factor id -> TranslationGroup
    factors: list           # [FactorSpec H, FactorSpec K]
    coords: dict            # point name -> rational position on the model circle
    aliases: dict           # boundary alias -> canonical boundary name
    seeds: dict             # seed name -> Seed
    top: tuple              # cyclic slot list for the whole circle
    unverified: bool = False
    _keys: dict = field(default_factory=dict, repr=False)

    # ---- points -----------------------------------------------------------
    def canonical_base(self, base: str) -> str:
        base = ALIASES.get(base, base)
        base = self.aliases.get(base, base)
        if base not in self.coords:
            raise KeyError(f"unknown base point {base}")
        return base

    def vpoint(self, base: str, word: Optional[NormalWord] = None) -> VirtualPoint:
        return self.act(word or NormalWord(), VirtualPoint(NormalWord(), self.canonical_base(base)))

    def boundaries(self) -> list[str]:
        return [s.name for s in self.top if s.kind == "B"]

    def lam(self, factor: str, vec) -> Surd:
        return self.groups[factor].value(vec)

    def syllable(self, factor: str, vec) -> NormalWord:
        return NormalWord(((factor, tuple(vec)),))

    # ---- action -----------------------------------------------------------
    def act(self, w: NormalWord, x: VirtualPoint) -> VirtualPoint:
        word = w * x.word
        syls = word.syllables
        if syls and STABILIZER.get(x.base) == syls[-1][0]:
            word = NormalWord(syls[:-1])
        return VirtualPoint(word, x.base)

    # ---- order ------------------------------------------------------------
    def _home(self, factor: str, base: str) -> str:
        """The seed of `factor` whose closure holds the base point."""
        for seed in self.seeds.values():
            if seed.factor == factor and any(
                    s.kind in ("B", "X", "L", "R") and s.name == base for s in seed.content):
                return seed.name
        raise PreconditionViolated(f"no {factor}-seed contains {base}")

    def _band_home(self, factor: str, inner: tuple) -> str:
        """The seed of `factor` containing the band point described by inner."""
        f2, side, chart = inner
        for seed in self.seeds.values():
            if seed.factor != factor:
                continue
            for s in seed.content:
                if s.band and s.band.factor == f2 and s.band.side == side and s.band.holds(chart):
                    return seed.name
        raise PreconditionViolated(f"no {factor}-seed holds the {f2}{side} chart value {chart}")

    def _chart(self, syls: tuple, base: str):
        """(factor, side, chart value, seed) for the point syls.base with syls nonempty."""
        fid, vec = syls[0]
        seed = self._container(fid, syls[1:], base)
        s = self.seeds[seed]
        return fid, s.side, s.address + self.lam(fid, vec), seed

    def _container(self, factor: str, syls: tuple, base: str) -> str:
        if not syls:
            return self._home(factor, base)
        f2, side, chart, _ = self._chart(syls, base)
        return self._band_home(factor, (f2, side, chart))

    def _locate(self, syls: tuple, base: str, slots: Sequence[Slot]) -> tuple:
        if not syls:
            for i, s in enumerate(slots):
                if s.kind in ("B", "X", "L", "R") and s.name == base:
                    return (i,)
            raise PreconditionViolated(f"{base} is not in this region")
        fid, side, chart, seed = self._chart(syls, base)
        for i, s in enumerate(slots):
            if s.band and s.band.factor == fid and s.band.side == side and s.band.holds(chart):
                head = (i, chart if s.band.ascending else -chart)
                return head + self._locate(syls[1:], base, self.seeds[seed].content)
        raise PreconditionViolated(f"chart value {chart} of {fid}{side} has no band here")

    def key(self, x: VirtualPoint) -> tuple:
        k = (x.word.syllables, x.base)
        out = self._keys.get(k)
        if out is None:
            out = self._locate(x.word.syllables, x.base, self.top)
            self._keys[k] = out
        return out

    def same(self, x: VirtualPoint, y: VirtualPoint) -> bool:
        return x == y

    def compare(self, x: VirtualPoint, y: VirtualPoint, z: VirtualPoint) -> int:
        """Circular order of three virtual points."""
        x, y, z = _strip_common_prefix(x, y, z)
        kx, ky, kz = self.key(x), self.key(y), self.key(z)
        if kx == ky or ky == kz or kx == kz:
            return 0
        descents = (kx > ky) + (ky > kz) + (kz > kx)
        return 1 if descents == 1 else -1

    def sort(self, points: Iterable[VirtualPoint]) -> list[VirtualPoint]:
        """Counterclockwise order starting from the first top-level slot."""
        return sorted(points, key=cmp_to_key(lambda a, b: (self.key(a) > self.key(b)) - (self.key(a) < self.key(b))))

    # ---- model-circle embedding ------------------------------------------
    def region(self, x: VirtualPoint) -> tuple[CirclePoint, CirclePoint]:
        """Closed arc of the model circle known to contain x (a point if exact)."""
        idx = self.key(x)[0]
        slot = self.top[idx]
        if slot.kind in ("B", "X"):
            c = self.coords[slot.name]
            return c, c
        n = len(self.top)
        return self.coords[self.top[(idx - 1) % n].name], self.coords[self.top[(idx + 1) % n].name]


def _strip_common_prefix(x: VirtualPoint, y: VirtualPoint, z: VirtualPoint):
    sx, sy, sz = x.word.syllables, y.word.syllables, z.word.syllables
    k = 0
    while k < min(len(sx), len(sy), len(sz)) and sx[k] == sy[k] == sz[k]:
        k += 1
    if k == 0:
        return x, y, z
    return (VirtualPoint(NormalWord(sx[k:]), x.base), VirtualPoint(NormalWord(sy[k:]), y.base),
            VirtualPoint(NormalWord(sz[k:]), z.base))


def in_arc_closure(model: ModelConfig, lo: VirtualPoint, hi: VirtualPoint, x: VirtualPoint) -> bool:
    return x == lo or x == hi or model.compare(lo, x, hi) == 1


def arc_inside(model: ModelConfig, x: VirtualPoint, y: VirtualPoint,
               lo: VirtualPoint, hi: VirtualPoint) -> bool:
    """Is the open arc (x, y) contained in the open arc (lo, hi)?"""
    if x == y or x == hi or y == lo:
        return False
    if not (in_arc_closure(model, lo, hi, x) and in_arc_closure(model, lo, hi, y)):
        return False
    return x == lo or y == hi or model.compare(lo, x, y) == 1


# ---- gaps and cores ---------------------------------------------------------

POINT_FACTOR = {"P": "H", "p": "H", "Pbar": "H", "pbar": "H", "Q": "K", "q": "K", "Qbar": "K", "qbar": "K"}


@dataclass(frozen=True)
class GapSystem:
    label: str
    factor: str
    side: Optional[str]
    seeds: tuple[tuple[str, str, Surd], ...]   # (seed name, side, address)


def _in_seed_interior(model: ModelConfig, factor: str, syls: tuple, base: str) -> bool:
    try:
        seed = model._container(factor, syls, base)
    except PreconditionViolated:
        return False
    if syls:
        return True
    ends = {s.name for s in model.seeds[seed].content if s.kind in ("L", "R")}
    return base not in ends


def in_gap(model: ModelConfig, factor: str, x: VirtualPoint) -> bool:
    """Does x lie in an open gap of the points fixed by `factor`?"""
    syls = x.word.syllables
    if syls and syls[0][0] == factor:
        syls = syls[1:]
    return _in_seed_interior(model, factor, syls, x.base)


def gap_address(model: ModelConfig, factor: str, x: VirtualPoint) -> Optional[tuple[str, Surd]]:
    """(side, chart address) of the gap of `factor` holding x, or None."""
    if not in_gap(model, factor, x):
        return None
    syls = x.word.syllables
    if syls and syls[0][0] == factor:
        _, side, chart, _ = model._chart(syls, x.base)
        return side, chart
    seed = model.seeds[model._container(factor, syls, x.base)]
    return seed.side, seed.address


@dataclass(frozen=True)
class GapView:
    system: GapSystem
    model: ModelConfig

    def in_gap(self, x: VirtualPoint) -> bool:
        g = gap_address(self.model, self.system.factor, x)
        return g is not None and (self.system.side is None or g[0] == self.system.side)

    def in_core(self, x: VirtualPoint) -> bool:
        return not in_gap(self.model, self.system.factor, x)

    def address(self, x: VirtualPoint) -> Optional[Surd]:
        g = gap_address(self.model, self.system.factor, x)
        return None if g is None else g[1]


def gaps_and_core(model: ModelConfig, label: str, side: Optional[str] = None) -> GapView:
    if label not in POINT_FACTOR:
        raise PreconditionViolated(f"{label} is not a special point")
    factor = POINT_FACTOR[label]
    seeds = tuple((s.name, s.side, s.address) for s in model.seeds.values()
                  if s.factor == factor and (side is None or s.side == side))
    group = model.groups[factor]
    for i, (n1, s1, a1) in enumerate(seeds):
        for n2, s2, a2 in seeds[i + 1:]:
            if s1 == s2 and group.contains(a1 - a2):
                raise PreconditionViolated(f"seeds {n1} and {n2} share a coset")
    return GapView(GapSystem(label, factor, side, seeds), model)


# ---- north-south audit ------------------------------------------------------

@dataclass
class AuditReport:
    passed: bool
    forward_near: Optional[str] = None
    backward_near: Optional[str] = None
    violation: Optional[tuple] = None
    skipped: int = 0

    def __str__(self):
        if self.passed:
            return f"pass (forward near {self.forward_near}, backward near {self.backward_near})"
        return f"fail at {tuple(str(v) for v in self.violation)}"


def _nearest_special(model: ModelConfig, x: VirtualPoint) -> str:
    idx = model.key(x)[0]
    n = len(model.top)
    for step in range(n):
        for j in (idx - step, idx + step):
            s = model.top[j % n]
            if s.kind == "X":
                return s.name
    return "?"


def _orbit(model, w, x, n):
    out = [x]
    for _ in range(n):
        out.append(model.act(w, out[-1]))
    return out


def _monotone_violation(model, orbit):
    tail = orbit[len(orbit) // 2:]
    signs = [model.compare(tail[i], tail[i + 1], tail[i + 2]) for i in range(len(tail) - 2)]
    for i, s in enumerate(signs):
        if s == 0 or s != signs[0]:
            return tuple(tail[i:i + 3])
    return None


def north_south_audit(model: ModelConfig, w: NormalWord, samples: Sequence[VirtualPoint],
                      iterations: int = 32) -> AuditReport:
    if w.is_identity():
        raise PreconditionViolated("the audit needs a nontrivial word")
    if iterations < 1:
        raise PreconditionViolated("iterations must be positive")
    winv = w.inverse()
    fwd, bwd, skipped = [], [], 0
    for x in samples:
        if model.act(w, x) == x:
            skipped += 1
            continue
        for word, bucket in ((w, fwd), (winv, bwd)):
            orbit = _orbit(model, word, x, max(iterations, 3))
            bad = _monotone_violation(model, orbit)
            if bad:
                return AuditReport(False, violation=bad, skipped=skipped)
            bucket.append(orbit[len(orbit) // 2:])
    if not fwd:
        return AuditReport(True, skipped=skipped)
    tagged = [(x, "F") for o in fwd for x in o] + [(x, "B") for o in bwd for x in o]
    order = sorted(tagged, key=lambda t: model.key(t[0]))
    changes = [i for i in range(len(order)) if order[i][1] != order[i - 1][1]]
    if len(changes) > 2:
        i = changes[2]
        return AuditReport(False, violation=(order[i - 2][0], order[i - 1][0], order[i][0]), skipped=skipped)
    return AuditReport(True, _nearest_special(model, fwd[0][-1]), _nearest_special(model, bwd[0][-1]),
                       skipped=skipped)
