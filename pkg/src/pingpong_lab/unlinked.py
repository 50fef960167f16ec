"""Classification of gap configurations for unlinked points p < qbar < q < pbar."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Optional, Sequence

from .circle import (Arc, ArcSet, CirclePoint, circular_order, closure_subset, closures_cover,
                     disjoint, point, same, subset)
from .errors import ChainViolation, InconsistentGapData, PreconditionViolated
from .layouts import check_chain
from .moebius import MoebiusMap
from .pingpong import Partition, build_unlinked_geometric, build_unlinked_parallel


class UnlinkedLabel(enum.Enum):
    GEOMETRIC = "GeometricU"
    NON_GEOMETRIC_1 = "NonGeometric1"
    NON_GEOMETRIC_2 = "NonGeometric2"
    HEXAGONAL = "Hexagonal"


@dataclass(frozen=True)
class GapData:
    """Points and known gaps; gaps[x][side] lists arcs for x in {"p", "q"}, side in {"R", "L"}."""

    points: Mapping[str, CirclePoint]
    gaps: Mapping[str, Mapping[str, tuple]]

    @classmethod
    def of(cls, points: Mapping, gaps: Mapping) -> "GapData":
        pts = {k: point(v) for k, v in points.items()}
        gs = {x: {s: tuple(a if isinstance(a, Arc) else Arc(point(a[0]), point(a[1]))
                           for a in gaps.get(x, {}).get(s, ()))
                  for s in ("R", "L")} for x in ("p", "q")}
        return cls(pts, gs)

    def all_gaps(self, x: str) -> tuple:
        return self.gaps[x]["R"] + self.gaps[x]["L"]


@dataclass
class UnlinkedConfig:
    label: UnlinkedLabel
    accepted: bool
    data: GapData
    intervals: dict = field(default_factory=dict)
    partition: Optional[Partition] = None
    witness: dict = field(default_factory=dict)

    def __str__(self):
        tag = "" if self.accepted else " (rejected)"
        return f"{self.label.value}{tag}"


BAR = {"p": "pbar", "q": "qbar"}
OTHER = {"p": "q", "q": "p"}


def _side(data: GapData, x: str, side: str) -> Arc:
    a, abar = data.points[x], data.points[BAR[x]]
    return Arc(a, abar) if side == "R" else Arc(abar, a)


def _validate(data: GapData) -> None:
    pts = data.points
    for k in ("p", "pbar", "q", "qbar"):
        if k not in pts:
            raise InconsistentGapData(f"missing point {k}")
    p, qbar, q, pbar = pts["p"], pts["qbar"], pts["q"], pts["pbar"]
    if not (circular_order(p, qbar, q) == 1 and circular_order(p, q, pbar) == 1):
        raise InconsistentGapData("points must satisfy p < qbar < q < pbar")
    for x in ("p", "q"):
        for side in ("R", "L"):
            host = ArcSet((_side(data, x, side),))
            for g in data.gaps[x][side]:
                if not subset(ArcSet((g,)), host):
                    raise InconsistentGapData(f"gap {g} of {x} is not on the {side} side of {x}")
        gs = data.all_gaps(x)
        for i in range(len(gs)):
            for j in range(i + 1, len(gs)):
                if not disjoint(ArcSet((gs[i],)), ArcSet((gs[j],))):
                    raise InconsistentGapData(f"gaps {gs[i]} and {gs[j]} of {x} overlap")


def _inside_gap(arc: Arc, gaps: Sequence[Arc]) -> Optional[Arc]:
    for g in gaps:
        if subset(ArcSet((arc,)), ArcSet((g,))):
            return g
    return None


def meets_core(data: GapData, x: str, side: str) -> bool:
    """Does the given side of x meet Core of the other point?"""
    return _inside_gap(_side(data, x, side), data.all_gaps(OTHER[x])) is None


def _holding(gaps: Sequence[Arc], arc: Optional[Arc], pt: Optional[CirclePoint] = None) -> Optional[Arc]:
    for g in gaps:
        if pt is not None and not g.contains(pt):
            continue
        if arc is None or subset(ArcSet((arc,)), ArcSet((g,))):
            return g
    return None


def _arc_or_none(lo, hi) -> Optional[Arc]:
    return None if same(lo, hi) else Arc(lo, hi)


def _resolve(data: GapData, a: str, b: str) -> UnlinkedConfig:
    """L(b) lies in a right gap of a; decide between the covering and flanking layouts."""
    pts = data.points
    A, Abar = pts[a], pts[BAR[a]]
    R_a = _holding(data.gaps[a]["R"], _side(data, b, "L"))
    if R_a is None:
        raise InconsistentGapData(f"L({b}) misses Core({a}) but lies in no listed right gap of {a}")
    u, v = R_a.lo, R_a.hi
    left, right = _arc_or_none(A, u), _arc_or_none(v, Abar)
    R_1 = _holding(data.gaps[b]["R"], left, None if left else A)
    R_2 = _holding(data.gaps[b]["R"], right, None if right else Abar)
    if R_1 is None or R_2 is None:
        raise InconsistentGapData(f"no right gap of {b} contains ({a}, u) and (v, {BAR[a]}) as required")
    names = {f"R_{a}": R_a, "R_1": R_1, "R_2": R_2}
    if R_1 == R_2:
        if not closures_cover(ArcSet((R_1,)), ArcSet((R_a,))):
            raise InconsistentGapData(f"R_1 = R_2 but the closures of R_1 and R_{a} leave a gap")
        R_p, R_q = (R_a, R_1) if a == "p" else (R_1, R_a)
        part = build_unlinked_geometric(R_p, R_q, pts)
        return UnlinkedConfig(UnlinkedLabel.GEOMETRIC, True, data, names, part)
    L_a = None
    for g in data.gaps[a]["L"]:
        tail, head = _arc_or_none(g.hi, A), _arc_or_none(Abar, g.lo)
        if (tail is None or subset(ArcSet((tail,)), ArcSet((R_1,)))) and \
                (head is None or subset(ArcSet((head,)), ArcSet((R_2,)))):
            L_a = g
            break
    if L_a is None:
        raise InconsistentGapData(f"R_1 != R_2 but no left gap of {a} sits between them")
    names[f"L_{a}"] = L_a
    try:
        part = build_unlinked_parallel(R_2, L_a, R_1, R_a, pts[b], pts[BAR[a]], A, pts[BAR[b]])
    except ChainViolation as exc:
        raise InconsistentGapData(f"flanking layout breaks its chain: {exc}") from exc
    if a == "q":
        return UnlinkedConfig(UnlinkedLabel.NON_GEOMETRIC_1, True, data, names, part)
    swapped = Partition(part.U_K, part.U_H, None)
    return UnlinkedConfig(UnlinkedLabel.NON_GEOMETRIC_2, True, data, names, swapped)


HEX_NAMES = ["u1", "v6", "u2", "v1", "u3", "v2", "u4", "v3", "u5", "v4", "u6", "v5"]
HEX_RELS = ["<=", "<", "<=", "<", "<=", "<", "<=", "<", "<=", "<", "<=", "<"]


def _hexagon(data: GapData) -> UnlinkedConfig:
    pts = data.points
    p, pbar, q, qbar = pts["p"], pts["pbar"], pts["q"], pts["qbar"]
    core_q = [g for g in data.gaps["q"]["L"] if _inside_gap(g, data.all_gaps("p")) is None]
    core_p = [g for g in data.gaps["p"]["L"] if _inside_gap(g, data.all_gaps("q")) is None]
    if len(core_q) != 1 or len(core_p) != 1:
        raise InconsistentGapData("each of L(p), L(q) must meet the other core in exactly one listed left gap")
    I2, I5 = core_q[0], core_p[0]
    I1 = _holding(data.gaps["p"]["R"], _arc_or_none(qbar, I2.lo), qbar)
    I3 = _holding(data.gaps["p"]["R"], _arc_or_none(I2.hi, q), q)
    I4 = _holding(data.gaps["q"]["R"], _arc_or_none(pbar, I5.lo), pbar)
    I6 = _holding(data.gaps["q"]["R"], _arc_or_none(I5.hi, p), p)
    if None in (I1, I3, I4, I6):
        raise InconsistentGapData("the right gaps flanking the crossing left gaps are missing")
    six = [I1, I2, I3, I4, I5, I6]
    values = {}
    for i, g in enumerate(six, start=1):
        values[f"u{i}"], values[f"v{i}"] = g.lo, g.hi
    check_chain(HEX_NAMES, values, HEX_RELS, InconsistentGapData)
    separated = closure_subset(ArcSet((I1,)), ArcSet((Arc(I5.hi, I5.lo),)))
    witness = {
        "h": "h in H+(p) with h(I_1) in I_2, hence h(I_5) in I_4",
        "f": "f in H+(q) with f(I_4) in I_5, hence f(I_2) in I_1",
        "fh": "fh(I_1) in I_1 and fh(I_5) in I_5",
        "closures_disjoint": separated,
    }
    if not separated:
        raise InconsistentGapData("closures of I_1 and I_5 meet")
    names = {f"I_{i}": g for i, g in enumerate(six, start=1)}
    return UnlinkedConfig(UnlinkedLabel.HEXAGONAL, False, data, names, None, witness)


def classify_unlinked_config(data: GapData) -> UnlinkedConfig:
    _validate(data)
    a_meets = meets_core(data, "p", "L")
    b_meets = meets_core(data, "q", "L")
    if a_meets and b_meets:
        return _hexagon(data)
    if not b_meets:
        return _resolve(data, "p", "q")
    return _resolve(data, "q", "p")


# ---- same orbit -------------------------------------------------------------

@dataclass
class SameOrbitResult:
    holds: bool
    label: UnlinkedLabel
    report: str


def same_orbit_constraint(config: UnlinkedConfig, g: Optional[MoebiusMap]) -> SameOrbitResult:
    if g is None:
        raise PreconditionViolated("a witness g with g(p) in {q, qbar} is required")
    pts = config.data.points
    gp = g(pts["p"])
    if not (same(gp, pts["q"]) or same(gp, pts["qbar"])):
        raise PreconditionViolated(f"witness {g} sends p to {gp}, not to q or qbar")
    if config.label is UnlinkedLabel.GEOMETRIC:
        return SameOrbitResult(True, config.label, "same-orbit data is geometric")
    return SameOrbitResult(False, config.label,
                           f"COUNTEREXAMPLE: {g} maps p into the orbit of q but the data is {config.label.value}")


def conjugator(p, pbar, q, qbar) -> MoebiusMap:
    """An integer map sending p to q and pbar to qbar (finite rational points)."""
    def frame(a, abar):
        # 0 -> a, infinity -> abar
        return [Fraction(abar), Fraction(a), Fraction(1), Fraction(1)]
    def mul(m, n):
        a, b, c, d = m
        e, f, g, h = n
        return [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]
    tp = frame(p, pbar)
    tq = frame(q, qbar)
    tp_inv = [tp[3], -tp[1], -tp[2], tp[0]]
    det = (tq[0] * tq[3] - tq[1] * tq[2]) * (tp[0] * tp[3] - tp[1] * tp[2])
    k = 1 if det > 0 else -1
    m = mul(mul(tq, [Fraction(k), Fraction(0), Fraction(0), Fraction(1)]), tp_inv)
    den = lcm(*(x.denominator for x in m))
    return MoebiusMap(*(int(x * den) for x in m))
