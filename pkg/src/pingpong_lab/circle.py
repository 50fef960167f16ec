"""Points of the projective line, circular order, and finite unions of open arcs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence, Union

from .errors import DegeneratePoints, OverlapError
from .surd import Surd


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
CirclePoint = Union[Surd, _Infinity]


def point(x) -> CirclePoint:
    """Coerce ints, Fractions, Surds, 'inf' and rational strings to a CirclePoint."""
    if x is INF or isinstance(x, Surd):
        return x
    if isinstance(x, (int, Fraction)):
        return Surd(x)
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        return Surd(Fraction(x.strip()))
    raise TypeError(f"cannot interpret {x!r} as a circle point")


def is_inf(x) -> bool:
    return x is INF


def line_cmp(x: CirclePoint, y: CirclePoint) -> int:
    """Linear order on the cut circle: reals ascending, infinity last."""
    if x is INF:
        return 0 if y is INF else 1
    if y is INF:
        return -1
    return x.cmp(y)


def same(x: CirclePoint, y: CirclePoint) -> bool:
    return line_cmp(x, y) == 0


def circular_order(x: CirclePoint, y: CirclePoint, z: CirclePoint) -> int:
    """+1 if (x, y, z) is counterclockwise, -1 if clockwise, 0 on coincidence."""
    xy, yz, zx = line_cmp(x, y), line_cmp(y, z), line_cmp(z, x)
    if xy == 0 or yz == 0 or zx == 0:
        return 0
    # a cyclic rotation is increasing iff exactly one of the three steps descends
    descents = (xy > 0) + (yz > 0) + (zx > 0)
    return 1 if descents == 1 else -1


def linked(pair1: Sequence[CirclePoint], pair2: Sequence[CirclePoint]) -> bool:
    x, y = pair1
    u, v = pair2
    pts = [x, y, u, v]
    for i in range(4):
        for j in range(i + 1, 4):
            if same(pts[i], pts[j]):
                raise DegeneratePoints("linked() needs four distinct points")
    return circular_order(x, u, y) != circular_order(x, v, y)


def sort_cyclic(points: Iterable[CirclePoint]) -> list[CirclePoint]:
    """Distinct points in counterclockwise order starting just after infinity."""
    out: list[CirclePoint] = []
    for p in sorted(points, key=cmp_to_key(line_cmp)):
        if not out or not same(out[-1], p):
            out.append(p)
    return out


@dataclass(frozen=True)
class Arc:
    lo: CirclePoint
    hi: CirclePoint

    def __post_init__(self):
        if same(self.lo, self.hi):
            raise ValueError("an arc needs distinct endpoints")

    def contains(self, z: CirclePoint) -> bool:
        return circular_order(self.lo, z, self.hi) == 1

    def wraps(self) -> bool:
        """True when infinity lies inside the arc."""
        return self.contains(INF)

    def closure_contains(self, z: CirclePoint) -> bool:
        return same(z, self.lo) or same(z, self.hi) or self.contains(z)

    def __str__(self):
        return f"({self.lo}, {self.hi})"


def _arc_key(arc: Arc):
    if arc.wraps():
        rank = 0
    elif arc.lo is INF:
        rank = 1
    else:
        rank = 2
    return rank, arc.lo


def _arc_cmp(a: Arc, b: Arc) -> int:
    ka, kb = _arc_key(a), _arc_key(b)
    if ka[0] != kb[0]:
        return ka[0] - kb[0]
    return line_cmp(ka[1], kb[1])


def arcs_meet(a: Arc, b: Arc) -> bool:
    return same(a.lo, b.lo) or a.contains(b.lo) or b.contains(a.lo)


@dataclass(frozen=True)
class ArcSet:
    arcs: tuple[Arc, ...] = ()

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self):
        return len(self.arcs)

    def endpoints(self) -> list[CirclePoint]:
        return [p for arc in self.arcs for p in (arc.lo, arc.hi)]

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.arcs) + "}"


def normalize(arcs: Iterable[Arc]) -> ArcSet:
    arcs = list(arcs)
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if arcs_meet(arcs[i], arcs[j]):
                raise OverlapError(f"arcs {arcs[i]} and {arcs[j]} overlap")
    return ArcSet(tuple(sorted(arcs, key=cmp_to_key(_arc_cmp))))


def arcset(*pairs) -> ArcSet:
    """Convenience constructor: arcset((lo, hi), ...)."""
    return normalize(Arc(point(lo), point(hi)) for lo, hi in pairs)


def contains(s: ArcSet, z: CirclePoint) -> bool:
    return any(arc.contains(z) for arc in s.arcs)


def closure_contains(s: ArcSet, z: CirclePoint) -> bool:
    return any(arc.closure_contains(z) for arc in s.arcs)


# Set algebra works on an atom decomposition: the sorted breakpoints b_0..b_{n-1}
# and the open segments (b_i, b_{i+1}) between them.  Atom 2i is b_i, atom 2i+1
# is the segment following it.

def _atoms(sets: Sequence[ArcSet]) -> list[CirclePoint]:
    return sort_cyclic(p for s in sets for p in s.endpoints())


def _segment_in(s: ArcSet, b: CirclePoint) -> bool:
    # b and the next breakpoint bound an atom segment that no endpoint splits
    for arc in s.arcs:
        if same(arc.lo, b) or arc.contains(b):
            return True
    return False


def _members(s: ArcSet, bps: list[CirclePoint]) -> list[bool]:
    out = []
    for b in bps:
        out.append(contains(s, b))
        out.append(_segment_in(s, b))
    return out


def _closure_members(s: ArcSet, bps: list[CirclePoint]) -> list[bool]:
    m = _members(s, bps)
    n = len(m)
    out = list(m)
    for k in range(0, n, 2):
        if m[(k - 1) % n] or m[k + 1]:
            out[k] = True
    return out


def _rebuild(bps: list[CirclePoint], mask: list[bool]) -> ArcSet:
    n = len(mask)
    if n == 0:
        return ArcSet(())
    if all(mask):
        raise ValueError("the full circle is not an arc set")
    start = mask.index(False)
    arcs = []
    run_start = None
    for step in range(1, n + 1):
        k = (start + step) % n
        if mask[k] and run_start is None:
            run_start = k
        if not mask[k] and run_start is not None:
            # run covers atoms run_start .. k-1; open set means both ends are segments
            lo = bps[(run_start - 1) // 2]
            hi = bps[k // 2]
            if run_start % 2 == 0 or k % 2 == 1:
                raise ValueError("result is not open")
            if same(lo, hi):
                raise ValueError("circle minus a point is not an arc set")
            arcs.append(Arc(lo, hi))
            run_start = None
    return normalize(arcs)


def union(a: ArcSet, b: ArcSet) -> ArcSet:
    bps = _atoms([a, b])
    ma, mb = _members(a, bps), _members(b, bps)
    return _rebuild(bps, [x or y for x, y in zip(ma, mb)])


def intersection(a: ArcSet, b: ArcSet) -> ArcSet:
    bps = _atoms([a, b])
    ma, mb = _members(a, bps), _members(b, bps)
    return _rebuild(bps, [x and y for x, y in zip(ma, mb)])


def subtract_closure(a: ArcSet, b: ArcSet) -> ArcSet:
    bps = _atoms([a, b])
    ma, mb = _members(a, bps), _closure_members(b, bps)
    return _rebuild(bps, [x and not y for x, y in zip(ma, mb)])


def subset(a: ArcSet, b: ArcSet) -> bool:
    bps = _atoms([a, b])
    ma, mb = _members(a, bps), _members(b, bps)
    return all(y or not x for x, y in zip(ma, mb))


def closure_subset(a: ArcSet, b: ArcSet) -> bool:
    """True iff the closure of a lies inside the open set b."""
    if not a.arcs:
        return True
    bps = _atoms([a, b])
    ma, mb = _closure_members(a, bps), _members(b, bps)
    return all(y or not x for x, y in zip(ma, mb))


def disjoint(a: ArcSet, b: ArcSet) -> bool:
    return not intersection(a, b).arcs


def covers_circle_closure(s: ArcSet) -> bool:
    if not s.arcs:
        return False
    bps = _atoms([s])
    return all(_closure_members(s, bps))


def arc_set_equal(a: ArcSet, b: ArcSet) -> bool:
    return subset(a, b) and subset(b, a)


def closures_cover(*sets: ArcSet) -> bool:
    """True iff the union of the closures of the given sets is the whole circle."""
    sets = [s for s in sets if s.arcs]
    if not sets:
        return False
    bps = _atoms(sets)
    masks = [_closure_members(s, bps) for s in sets]
    return all(any(col) for col in zip(*masks))
