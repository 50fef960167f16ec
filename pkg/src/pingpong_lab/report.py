"""Executing scenarios into reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .circle import arcset
from .configs import CommutatorLabel, census, classify_commutator, classify_pair
from .errors import PingPongError, ValidationError
from .layouts import (build_linked_model, build_unlinked_geometric_model,
                      build_unlinked_parallel_model)
from .model import ModelConfig, TranslationGroup
from .moebius import classify, fixed_pair, is_hyperbolic
from .parallel import worker_count
from .pingpong import (Partition, VerifyReport, build_linked_partition, build_unlinked_geometric,
                       build_unlinked_parallel, free_product_certificate, model_freeness,
                       verify_axis, verify_finite, verify_finite_model)
from .scenario import Command, Scenario
from .unlinked import GapData, classify_unlinked_config, same_orbit_constraint
from .words import FactorSpec, certify_hyperbolic_like

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INAPPLICABLE = 0, 1, 2, 3


class CommandFailed(PingPongError):
    def __init__(self, command: Command, cause: Exception):
        super().__init__(f"line {command.line}: {command.name} failed: {type(cause).__name__}: {cause}")
        self.command = command
        self.cause = cause


@dataclass
class Report:
    scenario: str
    results: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    inapplicable: list = field(default_factory=list)
    diagram: Optional[dict] = None

    @property
    def exit_code(self) -> int:
        if self.counterexamples:
            return EXIT_VIOLATION
        if self.inapplicable:
            return EXIT_INAPPLICABLE
        return EXIT_OK

    def as_dict(self) -> dict:
        return {"scenario": self.scenario, "results": self.results,
                "counterexamples": self.counterexamples, "inapplicable": self.inapplicable}


# ---- scenario data ------------------------------------------------------------

def _rational(x) -> Fraction:
    if getattr(x, "d", None) != 0:
        raise ValidationError(f"model coordinate {x} must be rational")
    return x.a


def _pair(values) -> tuple:
    if len(values) != 2:
        raise ValidationError("expected two values")
    return tuple(_rational(v) for v in values)


def _single(values) -> Fraction:
    if len(values) != 1:
        raise ValidationError("expected one value")
    return _rational(values[0])


def factors_of(sc: Scenario) -> tuple:
    if sc.factors:
        specs = [FactorSpec(fid, gens) for fid, gens in sc.factors.items()]
    else:
        names = list(sc.generators)
        if len(names) != 2:
            raise ValidationError("without a [factors] section exactly two generators are needed")
        specs = [FactorSpec("H", (names[0],)), FactorSpec("K", (names[1],))]
    return specs, dict(sc.generators)


def build_model(sc: Scenario) -> ModelConfig:
    m = sc.model
    try:
        groups = [TranslationGroup(*m[k]) for k in ("lambda_p", "lambda_q")]
        pts = {k: _single(m[k]) for k in ("P", "Q", "Pbar", "Qbar")}
        arr = m["arrangement"]
        if arr == "linked":
            gaps = {k: _pair(m[k]) for k in ("I_p", "I_q", "I_pbar", "I_qbar")}
            return build_linked_model(*groups, pts, gaps)
        if arr == "unlinked-geometric":
            return build_unlinked_geometric_model(*groups, pts, _pair(m["R_p"]), _pair(m["R_q"]))
        gaps = [_pair(m[f"I_{i}"]) for i in range(1, 5)]
        offset = _single(m["offset"]) if "offset" in m else Fraction(1, 2)
        return build_unlinked_parallel_model(*groups, pts, gaps, offset, allow_unverified=True)
    except KeyError as exc:
        raise ValidationError(f"model section is missing {exc.args[0]}") from exc


def model_partition(model: ModelConfig) -> Partition:
    arc = lambda name: model.seeds[name].arc
    c = model.coords
    if model.arrangement == "Linked":
        return build_linked_partition(arc("I_p"), arc("I_pbar"), arc("I_q"), arc("I_qbar"),
                                      c["P"], c["Q"], c["Pbar"], c["Qbar"])
    pts = {"p": c["P"], "pbar": c["Pbar"], "q": c["Q"], "qbar": c["Qbar"]}
    if model.arrangement == "UnlinkedGeometric":
        return build_unlinked_geometric(arc("R_p"), arc("R_q"), pts)
    return build_unlinked_parallel(arc("I_1"), arc("I_2"), arc("I_3"), arc("I_4"),
                                   c["P"], c["Qbar"], c["Q"], c["Pbar"])


def gap_data(sc: Scenario) -> GapData:
    g = sc.gaps
    try:
        pts = {k: g[k][0] for k in ("p", "pbar", "q", "qbar")}
    except KeyError as exc:
        raise ValidationError(f"gaps section is missing point {exc.args[0]}") from exc
    gaps = {x: {s: g.get(f"{x}.{s}", []) for s in ("R", "L")} for x in ("p", "q")}
    return GapData.of(pts, gaps)


def scenario_partition(sc: Scenario) -> Optional[Partition]:
    if sc.model:
        return model_partition(build_model(sc))
    if sc.partition:
        try:
            return Partition(arcset(*sc.partition["U_H"]), arcset(*sc.partition["U_K"]))
        except KeyError as exc:
            raise ValidationError(f"partition section is missing {exc.args[0]}") from exc
    return None


# ---- commands -----------------------------------------------------------------

def _verify_dict(r) -> dict:
    return {"mode": r.mode, "status": r.status, "radius": r.radius, "witness_word": r.witness_word,
            "witness_arc": r.witness_arc, "image_arc": r.image_arc, "reason": r.reason,
            "checked": r.checked}


def _classify(sc, cmd, rep):
    g = sc.generators[cmd.args[0]]
    out = {"map": g, "class": classify(g)}
    if is_hyperbolic(g):
        out["fixed_pair"] = fixed_pair(g)
    return out


def _classify_pair(sc, cmd, rep):
    f, g = (sc.generators[a] for a in cmd.args)
    pc = classify_pair(f, g)
    out = {"word": str(pc.word), "row": pc.row_hint, "linked": pc.linked,
           "row1_checks": pc.row1_checks, "points": pc.points}
    if not pc.row1_holds:
        rep.counterexamples.append({"command": cmd.name, "reason": "row-1 containment fails",
                                    "word": str(pc.word)})
    return out


def _classify_commutator(sc, cmd, rep):
    h, f = (sc.generators[a] for a in cmd.args)
    cc = classify_commutator(h, f)
    out = {"label": cc.label, "matched": cc.matched, "conjugacy": cc.conjugacy,
           "checks": cc.checks, "fixed_pairs": cc.fixed_pairs}
    if cc.label is CommutatorLabel.UNMATCHED or not all(cc.conjugacy.values()):
        rep.counterexamples.append({"command": cmd.name, "reason": "commutator configuration unmatched",
                                    "h": h, "f": f, "fixed_pairs": cc.fixed_pairs})
    return out


def _census(sc, cmd, rep):
    c = census(cmd.int_param("samples", 10000), cmd.int_param("seed", 42),
               worker_count(int(cmd.params["workers"]) if "workers" in cmd.params else None))
    classes = c.coincidence_free_classes()
    if len(classes) > 14 or c.row1_failures:
        rep.counterexamples.append({"command": cmd.name, "reason": "census exceeds the admissible classes",
                                    "classes": classes, "row1_failures": c.row1_failures})
    return {"samples": c.samples, "seed": c.seed, "counts": c.counts, "linked_counts": c.linked_counts,
            "coincidence_free_classes": classes, "row1_failures": c.row1_failures}


def _certify(sc, cmd, rep):
    factors, assignment = factors_of(sc)
    radius = cmd.int_param("radius", 6)
    hl = certify_hyperbolic_like(factors, assignment, radius)
    out = {"radius": radius, "status": hl.status, "checked": hl.checked}
    if not hl.certified:
        out["non_hyperbolic_like_witness"] = {"word": hl.witness.format(factors), "class": hl.witness_class}
        rep.counterexamples.append({"command": cmd.name, "reason": "word is not hyperbolic-like",
                                    "word": hl.witness.format(factors)})
    part = scenario_partition(sc) if not sc.model else None
    if part is not None:
        vr = verify_finite(part, factors, assignment, radius)
        cert = free_product_certificate(vr, hl, factors, assignment)
        out["free_product"] = {"issued": cert.issued, "words": cert.words,
                               "trivial_words": cert.trivial_words, "reason": cert.forwarded}
    return out


def _verify(sc, cmd, rep):
    mode = cmd.params.get("mode", "both")
    if mode not in ("finite", "axis", "both"):
        raise ValidationError(f"line {cmd.line}: mode must be finite, axis or both")
    radius = cmd.int_param("radius", 6)
    reports = []
    if sc.model:
        model = build_model(sc)
        part = model_partition(model)
        if mode in ("axis", "both"):
            reports.append(verify_axis(part, model))
        if mode in ("finite", "both"):
            reports.append(verify_finite_model(part, model, radius))
    else:
        part = scenario_partition(sc)
        if part is None:
            raise ValidationError(f"line {cmd.line}: verify needs a [partition] or [model] section")
        factors, assignment = factors_of(sc)
        if mode in ("axis", "both"):
            reports.append(VerifyReport("axis", "Inapplicable", reason="axis mode needs a realization model"))
        if mode in ("finite", "both"):
            reports.append(verify_finite(part, factors, assignment, radius))
    for r in reports:
        if r.status == "Violated":
            rep.counterexamples.append({"command": cmd.name, "reason": str(r)})
        elif r.status == "Inapplicable":
            rep.inapplicable.append({"command": cmd.name, "reason": r.reason})
    applicable = {r.status for r in reports if r.status != "Inapplicable"}
    if len(applicable) > 1:
        rep.counterexamples.append({"command": cmd.name, "reason": "verification modes disagree"})
    return {"reports": [_verify_dict(r) for r in reports]}


def _config_dict(cfg) -> dict:
    out = {"label": cfg.label, "accepted": cfg.accepted, "intervals": cfg.intervals,
           "witness": cfg.witness}
    if cfg.partition is not None:
        out["partition"] = {"U_H": cfg.partition.U_H, "U_K": cfg.partition.U_K}
    return out


def _classify_unlinked(sc, cmd, rep):
    return _config_dict(classify_unlinked_config(gap_data(sc)))


def _same_orbit(sc, cmd, rep):
    cfg = classify_unlinked_config(gap_data(sc))
    res = same_orbit_constraint(cfg, sc.generators[cmd.args[0]])
    if not res.holds:
        rep.counterexamples.append({"command": cmd.name, "reason": res.report})
    return {"holds": res.holds, "label": res.label, "report": res.report}


def _freeness(sc, cmd, rep):
    if not sc.model:
        raise ValidationError(f"line {cmd.line}: freeness needs a [model] section")
    fr = model_freeness(build_model(sc), cmd.int_param("radius", 6))
    if fr.trivial:
        rep.counterexamples.append({"command": cmd.name, "reason": "word acts trivially",
                                    "words": list(fr.trivial[:10])})
    return {"radius": fr.radius, "words": fr.words, "trivial": list(fr.trivial)}


HANDLERS = {
    "classify": _classify, "classify-pair": _classify_pair, "classify-commutator": _classify_commutator,
    "census": _census, "certify": _certify, "verify": _verify,
    "classify-unlinked": _classify_unlinked, "same-orbit": _same_orbit, "freeness": _freeness,
}


# ---- diagram data ---------------------------------------------------------------

def diagram_data(sc: Scenario) -> dict:
    """Points, gaps of p (blue), gaps of q (red) and partition arcs, when present."""
    out = {"points": {}, "gaps_p": [], "gaps_q": [], "U_H": [], "U_K": []}
    part = None
    if sc.model:
        model = build_model(sc)
        out["points"] = {k: model.coords[k] for k in ("P", "Q", "Pbar", "Qbar")}
        for seed in sorted(model.seeds.values(), key=lambda s: s.name):
            out["gaps_p" if seed.factor == "H" else "gaps_q"].append(seed.arc)
        part = model_partition(model)
    elif sc.gaps:
        data = gap_data(sc)
        out["points"] = dict(data.points)
        out["gaps_p"], out["gaps_q"] = list(data.all_gaps("p")), list(data.all_gaps("q"))
        try:
            part = classify_unlinked_config(data).partition
        except PingPongError:
            part = None
    elif sc.partition:
        part = scenario_partition(sc)
    if part is not None:
        out["U_H"], out["U_K"] = list(part.U_H.arcs), list(part.U_K.arcs)
    return out


def run(sc: Scenario) -> Report:
    rep = Report(sc.name)
    for cmd in sc.commands:
        try:
            result = HANDLERS[cmd.name](sc, cmd, rep)
        except ValidationError:
            raise
        except (PingPongError, ValueError) as exc:
            raise CommandFailed(cmd, exc) from exc
        rep.results.append({"command": cmd.name, "line": cmd.line, "args": list(cmd.args),
                            "params": dict(sorted(cmd.params.items())), "result": result})
    rep.diagram = diagram_data(sc)
    return rep
