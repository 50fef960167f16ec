"""Ping-pong partitions for two stabilizers and their verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .circle import (Arc, ArcSet, CirclePoint, closures_cover, disjoint, normalize,
                     point, same, subset, subtract_closure)
from .errors import (ActionMismatch, ChainViolation, CoverageFailure, FactorNotAbelian,
                     PreconditionViolated)
from .layouts import check_chain
from .model import ModelConfig, VirtualPoint, arc_inside
from .moebius import MoebiusMap
from .words import Evaluator, FactorSpec, HLCertificate, NormalWord, ball


@dataclass(frozen=True)
class Provenance:
    kind: str               # "linked", "unlinked-geometric", "unlinked-parallel"
    points: tuple           # ((name, point), ...)
    arcs: tuple             # ((name, Arc), ...)

    def arc(self, name: str) -> Arc:
        return dict(self.arcs)[name]


@dataclass(frozen=True)
class Partition:
    U_H: ArcSet
    U_K: ArcSet
    provenance: Optional[Provenance] = None

    def __post_init__(self):
        if not self.U_H.arcs or not self.U_K.arcs:
            raise ValueError("both sides of a partition must be non-empty")
        if not disjoint(self.U_H, self.U_K):
            raise ValueError("the two sides of a partition must be disjoint")


def _arc(x) -> Arc:
    if isinstance(x, Arc):
        return x
    lo, hi = x
    return Arc(point(lo), point(hi))


def _require_inside(name: str, arc: Arc, pt: CirclePoint) -> None:
    if not arc.contains(pt):
        raise ChainViolation(f"{name} must contain its point {pt}")


# ---- builders ---------------------------------------------------------------

def build_linked_partition(I_p, I_pbar, I_q, I_qbar, p, q, pbar, qbar) -> Partition:
    arcs = {"I_p": _arc(I_p), "I_q": _arc(I_q), "I_pbar": _arc(I_pbar), "I_qbar": _arc(I_qbar)}
    pts = {"p": point(p), "q": point(q), "pbar": point(pbar), "qbar": point(qbar)}
    for g in pts:
        _require_inside(f"I_{g}", arcs[f"I_{g}"], pts[g])
    if not closures_cover(*(ArcSet((a,)) for a in arcs.values())):
        raise CoverageFailure("the closures of I_p, I_q, I_pbar, I_qbar do not cover the circle")
    values = dict(pts)
    for g in ("p", "q", "pbar", "qbar"):
        values[f"u_{g}"], values[f"v_{g}"] = arcs[f"I_{g}"].lo, arcs[f"I_{g}"].hi
    names = ["p", "u_q", "v_p", "q", "u_pbar", "v_q", "pbar", "u_qbar", "v_pbar", "qbar", "u_p", "v_qbar"]
    rels = ["<", "<=", "<", "<", "<=", "<", "<", "<=", "<", "<", "<=", "<"]
    check_chain(names, values, rels, ChainViolation)
    side_p = normalize([arcs["I_p"], arcs["I_pbar"]])
    side_q = normalize([arcs["I_q"], arcs["I_qbar"]])
    prov = Provenance("linked", tuple(pts.items()), tuple(arcs.items()))
    return Partition(subtract_closure(side_p, side_q), subtract_closure(side_q, side_p), prov)


def build_unlinked_geometric(R_p, R_q, points: Optional[Mapping] = None) -> Partition:
    R_p, R_q = _arc(R_p), _arc(R_q)
    a, b = ArcSet((R_p,)), ArcSet((R_q,))
    if not closures_cover(a, b):
        raise CoverageFailure(f"closures of R_p={R_p} and R_q={R_q} do not cover the circle")
    pts = tuple((k, point(v)) for k, v in (points or {}).items())
    prov = Provenance("unlinked-geometric", pts, (("R_p", R_p), ("R_q", R_q)))
    return Partition(subtract_closure(b, a), subtract_closure(a, b), prov)


PARALLEL_NAMES = ["p", "u1", "v4", "qbar", "u2", "v1", "u3", "v2", "q", "u4", "v3", "pbar"]
PARALLEL_RELS = ["<", "<=", "<", "<", "<=", "<", "<=", "<", "<", "<=", "<", "<"]


def check_parallel_chain(gaps: Sequence[Arc], p, qbar, q, pbar) -> None:
    values = {"p": point(p), "qbar": point(qbar), "q": point(q), "pbar": point(pbar)}
    for i, arc in enumerate(gaps, start=1):
        values[f"u{i}"], values[f"v{i}"] = arc.lo, arc.hi
    check_chain(PARALLEL_NAMES, values, PARALLEL_RELS, ChainViolation)


def build_unlinked_parallel(I_1, I_2, I_3, I_4, p, qbar, q, pbar) -> Partition:
    """I_1, I_3 right gaps of p; I_2 a left and I_4 a right gap of q."""
    gaps = [_arc(x) for x in (I_1, I_2, I_3, I_4)]
    check_parallel_chain(gaps, p, qbar, q, pbar)
    even = normalize([gaps[1], gaps[3]])
    odd = normalize([gaps[0], gaps[2]])
    pts = (("p", point(p)), ("qbar", point(qbar)), ("q", point(q)), ("pbar", point(pbar)))
    prov = Provenance("unlinked-parallel", pts, tuple((f"I_{i}", g) for i, g in enumerate(gaps, start=1)))
    return Partition(even, subtract_closure(odd, even), prov)


# ---- reports ----------------------------------------------------------------

@dataclass
class VerifyReport:
    mode: str                        # "finite" or "axis"
    status: str                      # "Verified", "Violated", "Inapplicable"
    radius: Optional[int] = None
    witness_word: Optional[str] = None
    witness_arc: Optional[Arc] = None
    image_arc: Optional[Arc] = None
    reason: str = ""
    checked: int = 0
    details: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == "Verified"

    def __str__(self):
        head = f"{self.mode}" + (f"(r={self.radius})" if self.radius is not None else "")
        if self.status == "Violated":
            return f"{head}: Violated by {self.witness_word} on {self.witness_arc} -> {self.image_arc}"
        if self.status == "Inapplicable":
            return f"{head}: Inapplicable ({self.reason})"
        return f"{head}: Verified ({self.checked} checks)"


def _sides(partition: Partition):
    # factor id, source set (the other side), target set
    return (("H", partition.U_K, partition.U_H), ("K", partition.U_H, partition.U_K))


def verify_finite(partition: Partition, factors: Sequence[FactorSpec],
                  assignment: Mapping[str, MoebiusMap], radius: int) -> VerifyReport:
    """Möbius mode: images of arcs are computed by endpoint application."""
    if radius < 1:
        raise PreconditionViolated("radius must be at least 1")
    try:
        ev = Evaluator(factors, assignment)
    except (KeyError, FactorNotAbelian) as exc:
        raise ActionMismatch(str(exc)) from exc
    checked = 0
    for fid, source, target in _sides(partition):
        factor = [f for f in factors if f.factor_id == fid]
        if not factor:
            raise ActionMismatch(f"no factor named {fid}")
        for w in ball(factor, radius):
            g = ev(w)
            for arc in source.arcs:
                image = Arc(g(arc.lo), g(arc.hi))
                checked += 1
                if not subset(ArcSet((image,)), target):
                    return VerifyReport("finite", "Violated", radius, w.format(factors), arc, image,
                                        checked=checked)
    return VerifyReport("finite", "Verified", radius, checked=checked)


def _model_endpoint(model: ModelConfig, x: CirclePoint) -> Optional[VirtualPoint]:
    for name, c in model.coords.items():
        if same(c, x):
            return model.vpoint(name)
    return None


def _samples(model: ModelConfig, lo: VirtualPoint, hi: VirtualPoint, depth: int, limit: int):
    out = []
    bases = [model.vpoint(b) for b in model.coords]
    words = [NormalWord()] + list(ball(model.factors, depth)) if depth >= 1 else [NormalWord()]
    for w in words:
        for b in bases:
            x = model.act(w, b)
            if x not in out and model.compare(lo, x, hi) == 1:
                out.append(x)
                if len(out) >= limit:
                    return out
    return out


def verify_finite_model(partition: Partition, model: ModelConfig, radius: int,
                        depth: int = 4, sample_limit: int = 16) -> VerifyReport:
    """Model mode: component endpoints and sampled interior virtual points."""
    if radius < 1:
        raise PreconditionViolated("radius must be at least 1")
    comps = {}
    for fid, source, target in _sides(partition):
        for arc in tuple(source.arcs) + tuple(target.arcs):
            ends = (_model_endpoint(model, arc.lo), _model_endpoint(model, arc.hi))
            if None in ends:
                return VerifyReport("finite", "Inapplicable", radius,
                                    reason=f"arc {arc} does not end at model boundary points")
            comps[arc] = ends
    checked = 0
    for fid, source, target in _sides(partition):
        factor = [f for f in model.factors if f.factor_id == fid]
        if not factor:
            raise ActionMismatch(f"model has no factor {fid}")
        samples = {arc: _samples(model, *comps[arc], depth, sample_limit) for arc in source.arcs}
        for w in ball(factor, radius):
            for arc in source.arcs:
                lo, hi = comps[arc]
                ilo, ihi = model.act(w, lo), model.act(w, hi)
                checked += 1
                dest = next((d for d in target.arcs if arc_inside(model, ilo, ihi, *comps[d])), None)
                bad = dest is None
                if not bad:
                    dlo, dhi = comps[dest]
                    for x in samples[arc]:
                        checked += 1
                        if model.compare(dlo, model.act(w, x), dhi) != 1:
                            bad = True
                            break
                if bad:
                    return VerifyReport("finite", "Violated", radius, w.format(model.factors), arc,
                                        reason=f"image ({ilo}, {ihi}) leaves the target set",
                                        checked=checked)
    return VerifyReport("finite", "Verified", radius, checked=checked,
                        details={"sample_depth": depth})


# ---- axis mode ----------------------------------------------------------------

AXIS_KINDS = {"linked": "Linked", "unlinked-geometric": "UnlinkedGeometric",
              "unlinked-parallel": "UnlinkedParallel"}


def _seed_names(kind: str) -> dict:
    if kind == "linked":
        return {"I_p": "I_p", "I_q": "I_q", "I_pbar": "I_pbar", "I_qbar": "I_qbar"}
    if kind == "unlinked-geometric":
        return {"R_p": "R_p", "R_q": "R_q"}
    return {"I_1": "I_1", "I_2": "I_2", "I_3": "I_3", "I_4": "I_4"}


def verify_axis(partition: Partition, model: ModelConfig) -> VerifyReport:
    prov = partition.provenance
    if prov is None:
        return VerifyReport("axis", "Inapplicable", reason="partition was not produced by a builder")
    if AXIS_KINDS.get(prov.kind) != model.arrangement:
        return VerifyReport("axis", "Inapplicable",
                            reason=f"{prov.kind} partition against a {model.arrangement} model")
    # (a) the arcs are the model's seed gaps of the right stabilizers
    for arc_name, seed_name in _seed_names(prov.kind).items():
        seed = model.seeds.get(seed_name)
        arc = prov.arc(arc_name)
        if seed is None or not (same(seed.arc.lo, arc.lo) and same(seed.arc.hi, arc.hi)):
            return VerifyReport("axis", "Inapplicable", reason=f"{arc_name} is not a seed gap of the model")
    # (b) the builder's chain, re-checked
    try:
        if prov.kind == "linked":
            a = dict(prov.arcs)
            p = dict(prov.points)
            build_linked_partition(a["I_p"], a["I_pbar"], a["I_q"], a["I_qbar"],
                                   p["p"], p["q"], p["pbar"], p["qbar"])
        elif prov.kind == "unlinked-parallel":
            p = dict(prov.points)
            check_parallel_chain([g for _, g in prov.arcs], p["p"], p["qbar"], p["q"], p["pbar"])
    except (ChainViolation, CoverageFailure) as exc:
        return VerifyReport("axis", "Inapplicable", reason=f"chain: {exc}")
    checked = 0
    sides = {"H": (partition.U_K, partition.U_H), "K": (partition.U_H, partition.U_K)}
    # (c1) every component of the other side sits in a seed gap moved by the factor
    for fid, (source, _) in sides.items():
        seeds = [ArcSet((s.arc,)) for s in model.seeds.values() if s.factor == fid]
        for arc in source.arcs:
            checked += 1
            if not any(subset(ArcSet((arc,)), s) for s in seeds):
                return VerifyReport("axis", "Inapplicable",
                                    reason=f"component {arc} is not inside a gap moved by {fid}")
    # (c2) all images of seeds by nontrivial elements live in chart bands; each band
    # region lies in the factor's side of the partition
    n = len(model.top)
    for i, slot in enumerate(model.top):
        if not slot.band:
            continue
        lo = model.coords[model.top[(i - 1) % n].name]
        hi = model.coords[model.top[(i + 1) % n].name]
        region = Arc(lo, hi)
        checked += 1
        if not subset(ArcSet((region,)), sides[slot.band.factor][1]):
            return VerifyReport("axis", "Violated", witness_word=f"{slot.band.factor} band {slot.band.label()}",
                                witness_arc=region, image_arc=region, checked=checked)
    return VerifyReport("axis", "Verified", checked=checked)


# ---- certificate ----------------------------------------------------------------

@dataclass
class FreeProductCertificate:
    issued: bool
    radius: Optional[int] = None
    words: int = 0
    trivial_words: int = 0
    forwarded: Optional[str] = None

    def __str__(self):
        if not self.issued:
            return f"no certificate: {self.forwarded}"
        return f"free product certificate: {self.words} words of length <= {self.radius}, {self.trivial_words} trivial"


def free_product_certificate(report: VerifyReport, hl: HLCertificate,
                             factors: Optional[Sequence[FactorSpec]] = None,
                             assignment: Optional[Mapping[str, MoebiusMap]] = None) -> FreeProductCertificate:
    if not report.verified:
        return FreeProductCertificate(False, forwarded=f"partition {report}")
    if not hl.certified:
        name = hl.witness.format(factors) if hl.witness is not None else "?"
        return FreeProductCertificate(False, forwarded=f"{name} is {hl.witness_class.value}")
    trivial = 0
    words = hl.checked
    if factors is not None and assignment is not None:
        ev = Evaluator(factors, assignment)
        words = 0
        for w in ball(factors, hl.radius):
            words += 1
            trivial += ev(w).entries() == (1, 0, 0, 1)
    return FreeProductCertificate(trivial == 0, hl.radius, words, trivial,
                                  None if trivial == 0 else "trivial word found")


@dataclass(frozen=True)
class ModelFreenessReport:
    radius: int
    words: int
    trivial: tuple

    @property
    def free(self) -> bool:
        return not self.trivial


def model_freeness(model: ModelConfig, radius: int) -> ModelFreenessReport:
    """Exhaustively check that no word of the ball fixes every probe point of the model."""
    probes = [model.vpoint(b) for b in ("P", "Q", "Pbar", "Qbar")] + \
             [model.vpoint(b) for b in model.boundaries()]
    words, trivial = 0, []
    for w in ball(model.factors, radius):
        words += 1
        if all(model.same(model.act(w, x), x) for x in probes):
            trivial.append(w.format(model.factors))
    return ModelFreenessReport(radius, words, tuple(trivial))


def linked_containments(model: ModelConfig, h: NormalWord, f: NormalWord) -> dict:
    """For h in H_+(p) and f in H_+(q), check where the seed gaps of each factor land.

    Targets are the seed gaps minus the closure of the other factor's seeds, which
    the linked chain makes into the arcs (v_qbar, u_q), (v_q, u_qbar), (v_p, u_pbar), (v_pbar, u_p).
    """
    if model.arrangement != "Linked":
        raise PreconditionViolated("containments are stated for the linked layout")
    ends = {}
    for name in ("I_p", "I_pbar", "I_q", "I_qbar"):
        content = model.seeds[name].content
        ends[name] = (model.vpoint(content[0].name), model.vpoint(content[-1].name))
    u = {k[2:]: v[0] for k, v in ends.items()}
    v = {k[2:]: v[1] for k, v in ends.items()}
    cases = [
        ("h^-1(I_q u I_qbar) in I_p", h.inverse(), ("I_q", "I_qbar"), (v["qbar"], u["q"])),
        ("h(I_q u I_qbar) in I_pbar", h, ("I_q", "I_qbar"), (v["q"], u["qbar"])),
        ("f^-1(I_p u I_pbar) in I_q", f.inverse(), ("I_p", "I_pbar"), (v["p"], u["pbar"])),
        ("f(I_p u I_pbar) in I_qbar", f, ("I_p", "I_pbar"), (v["pbar"], u["p"])),
    ]
    out = {}
    for label, w, sources, (lo, hi) in cases:
        out[label] = all(arc_inside(model, model.act(w, a), model.act(w, b), lo, hi)
                         for a, b in (ends[s] for s in sources))
    return out
