"""Fixed-point configurations of compositions and commutators of hyperbolic pairs."""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Callable, Optional, Sequence

from .circle import Arc, CirclePoint, circular_order, linked, same
from .errors import (
    Commuting,
    CommutatorNotHyperbolic,
    CompositionNotHyperbolic,
    NotHyperbolic,
    PreconditionViolated,
    SharedFixedPoint,
)
from .moebius import (
    FixedPair,
    MoebiusMap,
    commutator,
    commutes,
    fixed_pair,
    is_hyperbolic,
    shares_fixed_point,
)

LABELS = ("a_f", "r_f", "a_g", "r_g", "a_fg", "r_fg", "a_gf", "r_gf")
SWAP = {"a_f": "a_g", "r_f": "r_g", "a_g": "a_f", "r_g": "r_f",
        "a_fg": "a_gf", "r_fg": "r_gf", "a_gf": "a_fg", "r_gf": "r_fg"}


def cyclic_sort(points: dict[str, CirclePoint], start: str) -> list[list[str]]:
    """Group labels into coincidence classes, listed counterclockwise from `start`."""
    base = points[start]

    def cmp(x: str, y: str) -> int:
        px, py = points[x], points[y]
        if same(px, py):
            return LABELS.index(x) - LABELS.index(y)
        if same(px, base):
            return -1
        if same(py, base):
            return 1
        return -circular_order(base, px, py)

    ordered = sorted(points, key=cmp_to_key(cmp))
    classes: list[list[str]] = []
    for lab in ordered:
        if classes and same(points[classes[-1][0]], points[lab]):
            classes[-1].append(lab)
        else:
            classes.append([lab])
    return classes


def in_cyclic_order(pts: Sequence[CirclePoint]) -> bool:
    """True iff the points are pairwise distinct and strictly counterclockwise."""
    n = len(pts)
    if n < 3:
        return n < 2 or not same(pts[0], pts[1])
    for i in range(1, n - 1):
        if circular_order(pts[0], pts[i], pts[i + 1]) != 1:
            return False
    return True


@dataclass(frozen=True)
class EightPointWord:
    classes: tuple[tuple[str, ...], ...]

    @classmethod
    def from_points(cls, points: dict[str, CirclePoint]) -> "EightPointWord":
        return cls(tuple(tuple(c) for c in cyclic_sort(points, "a_f")))

    @property
    def coincidence_free(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def swapped(self) -> "EightPointWord":
        """The word obtained by exchanging the roles of f and g, rotated to start at a_f."""
        classes = [tuple(sorted((SWAP[x] for x in c), key=LABELS.index)) for c in self.classes]
        k = next(i for i, c in enumerate(classes) if "a_f" in c)
        return EightPointWord(tuple(classes[k:] + classes[:k]))

    def __str__(self):
        return " ".join(c[0] if len(c) == 1 else "(" + ",".join(c) + ")" for c in self.classes)


@dataclass(frozen=True)
class PairClass:
    word: EightPointWord
    row_hint: object  # 1, 2, 3 or "UNKNOWN"
    points: dict
    linked: bool
    row1_checks: Optional[dict] = None

    @property
    def row1_holds(self) -> bool:
        return self.row1_checks is None or all(self.row1_checks.values())


def _check_pair(f: MoebiusMap, g: MoebiusMap) -> None:
    if commutes(f, g):
        raise Commuting(f"{f} and {g} commute")
    if shares_fixed_point(f, g):
        raise SharedFixedPoint(f"{f} and {g} share a fixed point")
    for name, m in (("f", f), ("g", g)):
        if not is_hyperbolic(m):
            raise NotHyperbolic(f"{name} = {m} is not hyperbolic")
    if not is_hyperbolic(f * g):
        raise CompositionNotHyperbolic(f"f*g = {f * g} is not hyperbolic")


def pair_points(f: MoebiusMap, g: MoebiusMap) -> dict[str, CirclePoint]:
    out = {}
    for name, m in (("f", f), ("g", g), ("fg", f * g), ("gf", g * f)):
        fp = fixed_pair(m)
        out["a_" + name] = fp.attracting
        out["r_" + name] = fp.repelling
    return out


def _row(pts: dict[str, CirclePoint]) -> object:
    four = {k: pts[k] for k in ("a_f", "r_f", "a_g", "r_g")}
    classes = cyclic_sort(four, "a_f")
    if any(len(c) > 1 for c in classes):
        return "UNKNOWN"
    order = tuple(c[0] for c in classes)
    if order in (("a_f", "a_g", "r_f", "r_g"), ("a_f", "a_g", "r_g", "r_f"),
                 ("a_f", "r_f", "r_g", "a_g"), ("a_f", "r_g", "r_f", "a_g")):
        return 1
    if order == ("a_f", "r_g", "a_g", "r_f"):
        return 2
    if order == ("a_f", "r_f", "a_g", "r_g"):
        return 3
    return "UNKNOWN"


def _row1_checks(pts: dict[str, CirclePoint]) -> dict[str, bool]:
    af, ag, rf, rg = pts["a_f"], pts["a_g"], pts["r_f"], pts["r_g"]
    fwd = Arc(af, ag)
    if not fwd.contains(rf) and not fwd.contains(rg):
        along_i = [af, pts["a_fg"], pts["a_gf"], ag]
    else:
        along_i = [ag, pts["a_gf"], pts["a_fg"], af]
    j = Arc(rf, rg)
    if j.contains(af) or j.contains(ag):
        j = Arc(rg, rf)
    return {
        "a_fg and a_gf in I, a_gf between a_fg and a_g": in_cyclic_order(along_i),
        "r_fg in J": j.contains(pts["r_fg"]),
        "r_gf in J": j.contains(pts["r_gf"]),
    }


def classify_pair(f: MoebiusMap, g: MoebiusMap) -> PairClass:
    _check_pair(f, g)
    pts = pair_points(f, g)
    row = _row(pts)
    checks = _row1_checks(pts) if row == 1 else None
    return PairClass(
        word=EightPointWord.from_points(pts),
        row_hint=row,
        points=pts,
        linked=linked((pts["a_f"], pts["r_f"]), (pts["a_g"], pts["r_g"])),
        row1_checks=checks,
    )


# ---- commutators ----------------------------------------------------------

class CommutatorLabel(enum.Enum):
    GEOMETRIC = "Geometric"
    NG1 = "NG1"
    NG2 = "NG2"
    NG3 = "NG3"
    NG4 = "NG4"
    UNMATCHED = "Unmatched"


COMMUTATOR_NAMES = ("[f^-1,h^-1]", "[h,f^-1]", "[f,h]", "[h^-1,f]")


@dataclass
class CommutatorClass:
    label: CommutatorLabel
    fixed_pairs: dict[str, FixedPair]
    conjugacy: dict[str, bool]
    checks: dict[str, list[tuple[str, bool]]] = field(default_factory=dict)

    @property
    def matched(self) -> list[str]:
        return [k for k, rows in self.checks.items() if all(ok for _, ok in rows)]


def commutator_maps(h: MoebiusMap, f: MoebiusMap) -> dict[str, MoebiusMap]:
    hi, fi = h.inverse(), f.inverse()
    return {
        "[f^-1,h^-1]": commutator(fi, hi),
        "[h,f^-1]": commutator(h, fi),
        "[f,h]": commutator(f, h),
        "[h^-1,f]": commutator(hi, f),
    }


def _conjugacy(h: MoebiusMap, f: MoebiusMap, cm: dict, fps: dict) -> dict[str, bool]:
    square = [
        ("h", h, "[f^-1,h^-1]", "[h,f^-1]"),
        ("f", f, "[f^-1,h^-1]", "[h^-1,f]"),
        ("f", f, "[h,f^-1]", "[f,h]"),
        ("h", h, "[h^-1,f]", "[f,h]"),
    ]
    out = {}
    for xname, x, src, dst in square:
        maps_ok = x * cm[src] * x.inverse() == cm[dst]
        fp_src, fp_dst = fps[src], fps[dst]
        transported = same(x(fp_src.attracting), fp_dst.attracting) and same(
            x(fp_src.repelling), fp_dst.repelling)
        out[f"{xname} conjugates {src} to {dst}"] = maps_ok and transported
    return out


def _inside(fp: FixedPair, lo: CirclePoint, hi: CirclePoint) -> bool:
    if same(lo, hi):
        return False
    arc = Arc(lo, hi)
    return arc.contains(fp.attracting) and arc.contains(fp.repelling)


def _chain_checks(names: Sequence[str], pts: dict[str, CirclePoint]) -> list[tuple[str, bool]]:
    """Check that the named points are strictly counterclockwise, link by link."""
    first = pts[names[0]]
    out = []
    for i in range(1, len(names) - 1):
        x, y = names[i], names[i + 1]
        label = f"{names[0]} < {x} < {y}" if i == 1 else f"{x} < {y}"
        out.append((label, circular_order(first, pts[x], pts[y]) == 1))
    return out


def classify_commutator(h: MoebiusMap, f: MoebiusMap) -> CommutatorClass:
    """Classify the commutator configuration for h with r(h)=p and f with r(f)=q."""
    for name, m in (("h", h), ("f", f)):
        if not is_hyperbolic(m):
            raise PreconditionViolated(f"{name} = {m} is not hyperbolic")
    fh, ff = fixed_pair(h), fixed_pair(f)
    p, pb, q, qb = fh.repelling, fh.attracting, ff.repelling, ff.attracting
    if any(same(x, y) for x, y in ((p, q), (p, qb), (pb, q), (pb, qb))):
        raise PreconditionViolated("h and f share a fixed point")
    if not (circular_order(p, q, pb) == 1 and circular_order(pb, qb, p) == 1):
        raise PreconditionViolated("fixed points are not arranged as p < q < pbar < qbar")
    cm = commutator_maps(h, f)
    for name, m in cm.items():
        if not is_hyperbolic(m):
            raise CommutatorNotHyperbolic(f"{name} = {m} is not hyperbolic")
    fps = {name: fixed_pair(m) for name, m in cm.items()}
    hi, fi = h.inverse(), f.inverse()

    P: dict[str, CirclePoint] = {"p": p, "pbar": pb, "q": q, "qbar": qb}
    for name, fp in fps.items():
        P["a" + name] = fp.attracting
        P["r" + name] = fp.repelling
    images: dict[str, Callable] = {
        "h^-1(q)": lambda: hi(q), "f^-1(p)": lambda: fi(p), "h(q)": lambda: h(q),
        "f^-1(pbar)": lambda: fi(pb), "h(qbar)": lambda: h(qb), "f(pbar)": lambda: f(pb),
        "f(p)": lambda: f(p), "h^-1(qbar)": lambda: hi(qb),
        "fh^-1(q)": lambda: f(hi(q)), "hf^-1(p)": lambda: h(fi(p)),
        "fhf^-1(p)": lambda: f(h(fi(p))), "hfh^-1(q)": lambda: h(f(hi(q))),
        "fh(q)": lambda: f(h(q)), "h^-1f^-1(pbar)": lambda: hi(fi(pb)),
        "h^-1fh(q)": lambda: hi(f(h(q))), "fh^-1f^-1(pbar)": lambda: f(hi(fi(pb))),
        "f^-1h(qbar)": lambda: fi(h(qb)), "h^-1f(pbar)": lambda: hi(f(pb)),
        "f^-1h^-1f(pbar)": lambda: fi(hi(f(pb))), "h^-1f^-1h(qbar)": lambda: hi(fi(h(qb))),
        "hf(p)": lambda: h(f(p)), "f^-1h^-1(qbar)": lambda: fi(hi(qb)),
        "hf^-1h^-1(qbar)": lambda: h(fi(hi(qb))), "f^-1hf(p)": lambda: fi(h(f(p))),
    }
    for k, fn in images.items():
        P[k] = fn()

    c1, c2, c3, c4 = COMMUTATOR_NAMES
    geometric = ["p", "h^-1(q)", "r" + c1, "a" + c1, "f^-1(p)",
                 "q", "f^-1(pbar)", "r" + c2, "a" + c2, "h(q)",
                 "pbar", "h(qbar)", "r" + c3, "a" + c3, "f(pbar)",
                 "qbar", "f(p)", "r" + c4, "a" + c4, "h^-1(qbar)"]
    checks = {"Geometric": _chain_checks(geometric, P)}

    def ng(chain, boxes):
        rows = _chain_checks(chain, P)
        for name, lo, hi_ in boxes:
            rows.append((f"Fix{name} in ({lo}, {hi_})", _inside(fps[name], P[lo], P[hi_])))
        return rows

    checks["NG1"] = ng(["p", "f^-1(p)", "a" + c1, "r" + c1, "h^-1(q)", "q"],
                       [(c4, "p", "fh^-1(q)"), (c2, "hf^-1(p)", "q"),
                        (c3, "fhf^-1(p)", "hfh^-1(q)")])
    checks["NG2"] = ng(["q", "h(q)", "a" + c2, "r" + c2, "f^-1(pbar)", "pbar"],
                       [(c3, "fh(q)", "pbar"), (c1, "q", "h^-1f^-1(pbar)"),
                        (c4, "h^-1fh(q)", "fh^-1f^-1(pbar)")])
    checks["NG3"] = ng(["pbar", "f(pbar)", "a" + c3, "r" + c3, "h(qbar)", "qbar"],
                       [(c2, "pbar", "f^-1h(qbar)"), (c4, "h^-1f(pbar)", "qbar"),
                        (c1, "f^-1h^-1f(pbar)", "h^-1f^-1h(qbar)")])
    checks["NG4"] = ng(["qbar", "h^-1(qbar)", "a" + c4, "r" + c4, "f(p)", "p"],
                       [(c3, "qbar", "hf(p)"), (c1, "f^-1h^-1(qbar)", "p"),
                        (c2, "hf^-1h^-1(qbar)", "f^-1hf(p)")])

    result = CommutatorClass(CommutatorLabel.UNMATCHED, fps,
                             _conjugacy(h, f, cm, fps), checks)
    if all(result.conjugacy.values()):
        matched = result.matched
        if len(matched) == 1:
            result.label = CommutatorLabel(matched[0])
    return result


# ---- census ---------------------------------------------------------------

@dataclass
class Census:
    seed: int
    samples: int
    counts: Counter
    linked_counts: Counter
    row1_failures: int = 0

    def coincidence_free_classes(self, linked_only: bool = False) -> list[str]:
        src = self.linked_counts if linked_only else self.counts
        return sorted(w for w in src if "(" not in w)


def _random_map(rng: random.Random, lo: int = -9, hi: int = 9) -> Optional[MoebiusMap]:
    a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
    if a * d - b * c <= 0:
        return None
    return MoebiusMap(a, b, c, d)


def sample_pair(seed: int, index: int) -> tuple[MoebiusMap, MoebiusMap]:
    """Deterministic rejection sampler for a valid pair, one sub-stream per index."""
    rng = random.Random(f"{seed}/{index}")
    while True:
        f, g = _random_map(rng), _random_map(rng)
        if f is None or g is None:
            continue
        try:
            _check_pair(f, g)
        except (NotHyperbolic, Commuting, SharedFixedPoint, CompositionNotHyperbolic):
            continue
        return f, g


def _census_chunk(args) -> tuple[Counter, Counter, int]:
    seed, start, stop = args
    counts, linked_counts, failures = Counter(), Counter(), 0
    for i in range(start, stop):
        f, g = sample_pair(seed, i)
        pc = classify_pair(f, g)
        w = str(pc.word)
        counts[w] += 1
        if pc.linked:
            linked_counts[w] += 1
        if pc.row_hint == 1 and not pc.row1_holds:
            failures += 1
    return counts, linked_counts, failures


def census(sample_count: int, seed: int, workers: int = 1) -> Census:
    if sample_count < 1:
        raise ValueError("sample_count must be positive")
    from .parallel import chunked_map

    step = max(1, sample_count // max(1, workers * 4))
    jobs = [(seed, s, min(sample_count, s + step)) for s in range(0, sample_count, step)]
    total, linked_total, failures = Counter(), Counter(), 0
    for c, lc, fl in chunked_map(_census_chunk, jobs, workers):
        total.update(c)
        linked_total.update(lc)
        failures += fl
    return Census(seed, sample_count, total, linked_total, failures)


def _linked_arrangement(h: MoebiusMap, f: MoebiusMap) -> bool:
    fh, ff = fixed_pair(h), fixed_pair(f)
    p, pb, q, qb = fh.repelling, fh.attracting, ff.repelling, ff.attracting
    if any(same(x, y) for x, y in ((p, q), (p, qb), (pb, q), (pb, qb))):
        return False
    return circular_order(p, q, pb) == 1 and circular_order(pb, qb, p) == 1


def sample_linked_pair(seed: int, index: int, radius: int = 6,
                       bound: int = 9) -> tuple[MoebiusMap, MoebiusMap]:
    """Seeded linked pair (p < q < pbar < qbar) whose group is hyperbolic up to `radius`."""
    from .words import certify_hyperbolic_like, free_pair

    rng = random.Random(f"linked/{seed}/{index}")
    while True:
        h, f = _random_map(rng, -bound, bound), _random_map(rng, -bound, bound)
        if h is None or f is None or not (is_hyperbolic(h) and is_hyperbolic(f)):
            continue
        if not _linked_arrangement(h, f):
            continue
        if not all(is_hyperbolic(m) for m in commutator_maps(h, f).values()):
            continue
        factors, assignment = free_pair(h, f)
        if certify_hyperbolic_like(factors, assignment, radius).certified:
            return h, f
