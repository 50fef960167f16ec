"""Layouts of the realization model for the supported configurations."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .circle import Arc, circular_order, point, same
from .errors import PreconditionViolated, SeedChainViolation
from .model import (B, ModelConfig, Seed, Slot, TranslationGroup, X, band,
                    require_dense)
from .surd import Surd
from .words import FactorSpec

DEFAULT_GENERATORS = (("h1", "h2"), ("f1", "f2"))


def check_chain(names: Sequence[str], values: Mapping[str, object], relations: Sequence[str],
                error=SeedChainViolation) -> None:
    """Check the cyclic chain names[0] rel names[1] rel ... rel names[0].

    Equal neighbours are allowed only under "<="; the remaining distinct points
    must then run once counterclockwise around the circle.
    """
    n = len(names)
    pts = [point(values[k]) for k in names]
    for i in range(n):
        j = (i + 1) % n
        if relations[i] == "<" and same(pts[i], pts[j]):
            raise error(f"{names[i]} < {names[j]} fails: both at {pts[i]}")
    kept = [i for i in range(n) if i == 0 or not same(pts[i], pts[i - 1])]
    if len(kept) > 1 and same(pts[kept[-1]], pts[0]):
        kept.pop()
    for a, b in zip(kept[1:], kept[2:]):
        if circular_order(pts[0], pts[a], pts[b]) != 1:
            raise error(f"{names[b - 1]} {relations[b - 1]} {names[b]} fails: {names[b]} = {pts[b]} is out of order")


def _aliases(names: Sequence[str], values: Mapping[str, Fraction], relations: Sequence[str]) -> dict:
    out = {}
    for i, rel in enumerate(relations):
        a, b = names[i], names[(i + 1) % len(names)]
        if rel == "<=" and Fraction(values[a]) == Fraction(values[b]):
            out[b] = out.get(a, a)
    return out


def _rename(slots: Sequence[Slot], aliases: Mapping[str, str], cyclic: bool) -> tuple:
    out = []
    for s in slots:
        if s.kind in ("B", "L", "R"):
            s = Slot(s.kind, aliases.get(s.name, s.name))
        out.append(s)
    names = {s.name for s in out if s.kind in ("L", "R")}
    out = [s for s in out if not (s.kind == "B" and s.name in names)]
    dedup = []
    for s in out:
        if dedup and s.kind == "B" and dedup[-1].kind == "B" and dedup[-1].name == s.name:
            continue
        dedup.append(s)
    if cyclic and len(dedup) > 1 and dedup[0].kind == "B" and dedup[-1].kind == "B" \
            and dedup[0].name == dedup[-1].name:
        dedup.pop()
    return tuple(dedup)


def _groups(lam_p: TranslationGroup, lam_q: TranslationGroup) -> dict:
    require_dense(lam_p, "Lambda_p")
    require_dense(lam_q, "Lambda_q")
    return {"H": lam_p, "K": lam_q}


def _factors(generators) -> list:
    gh, gk = generators
    return [FactorSpec("H", tuple(gh)), FactorSpec("K", tuple(gk))]


def _assemble(arrangement, groups, generators, values, names, relations, seed_table, top,
              unverified=False) -> ModelConfig:
    check_chain(names, values, relations)
    aliases = _aliases(names, values, relations)
    coords = {k: point(Fraction(v)) for k, v in values.items() if k not in aliases}
    seeds = {}
    for name, (factor, side, address, lo, hi, content) in seed_table.items():
        arc = Arc(point(Fraction(values[lo])), point(Fraction(values[hi])))
        content = (Slot("L", lo),) + tuple(content) + (Slot("R", hi),)
        seeds[name] = Seed(name, factor, side, Surd(address) if not isinstance(address, Surd) else address,
                           arc, _rename(content, aliases, cyclic=False))
    return ModelConfig(arrangement, groups, _factors(generators), coords, aliases, seeds,
                       _rename(top, aliases, cyclic=True), unverified)


LINKED_ORDER = ["P", "u_q", "v_p", "Q", "u_pbar", "v_q", "Pbar", "u_qbar", "v_pbar", "Qbar", "u_p", "v_qbar"]
LINKED_RELS = ["<", "<=", "<", "<", "<=", "<", "<", "<=", "<", "<", "<=", "<"]


def build_linked_model(lam_p: TranslationGroup, lam_q: TranslationGroup,
                       points: Mapping[str, Fraction], gaps: Mapping[str, tuple],
                       generators=DEFAULT_GENERATORS) -> ModelConfig:
    """Linked arrangement p < q < pbar < qbar with seed gaps I_p, I_q, I_pbar, I_qbar.

    I_q and I_qbar are gaps of p (right and left side), I_pbar and I_p gaps of q.
    """
    groups = _groups(lam_p, lam_q)
    values = dict(points)
    for g in ("p", "q", "pbar", "qbar"):
        values[f"u_{g}"], values[f"v_{g}"] = gaps[f"I_{g}"]
    zero = Surd(0)
    seed_table = {
        "I_q": ("H", "R", zero, "u_q", "v_q",
                [B("v_p"), band("K", "L", None, 0, False), X("Q"), band("K", "R", None, 0), B("u_pbar")]),
        "I_qbar": ("H", "L", zero, "u_qbar", "v_qbar",
                   [B("v_pbar"), band("K", "R", 0, None), X("Qbar"), band("K", "L", 0, None, False), B("u_p")]),
        "I_p": ("K", "L", zero, "u_p", "v_p",
                [B("v_qbar"), band("H", "L", None, 0, False), X("P"), band("H", "R", None, 0), B("u_q")]),
        "I_pbar": ("K", "R", zero, "u_pbar", "v_pbar",
                   [B("v_q"), band("H", "R", 0, None), X("Pbar"), band("H", "L", 0, None, False), B("u_qbar")]),
    }
    top = [B("u_p"), B("v_qbar"), band("H", "L", None, 0, False), X("P"), band("H", "R", None, 0),
           B("u_q"), B("v_p"), band("K", "L", None, 0, False), X("Q"), band("K", "R", None, 0),
           B("u_pbar"), B("v_q"), band("H", "R", 0, None), X("Pbar"), band("H", "L", 0, None, False),
           B("u_qbar"), B("v_pbar"), band("K", "R", 0, None), X("Qbar"), band("K", "L", 0, None, False)]
    return _assemble("Linked", groups, generators, values, LINKED_ORDER, LINKED_RELS, seed_table, top)


GEOMETRIC_ORDER = ["P", "a_p", "b_q", "Qbar", "Q", "a_q", "b_p", "Pbar"]
GEOMETRIC_RELS = ["<", "<=", "<", "<", "<", "<=", "<", "<"]


def build_unlinked_geometric_model(lam_p: TranslationGroup, lam_q: TranslationGroup,
                                   points: Mapping[str, Fraction], R_p: tuple, R_q: tuple,
                                   generators=DEFAULT_GENERATORS) -> ModelConfig:
    """Unlinked p < qbar < q < pbar with R_p a right gap of p holding q, qbar and
    R_q a right gap of q holding p, pbar."""
    groups = _groups(lam_p, lam_q)
    values = dict(points)
    values["a_p"], values["b_p"] = R_p
    values["a_q"], values["b_q"] = R_q
    zero = Surd(0)
    seed_table = {
        "R_p": ("H", "R", zero, "a_p", "b_p",
                [B("b_q"), band("K", "R", 0, None), X("Qbar"), X("Q"), band("K", "R", None, 0), B("a_q")]),
        "R_q": ("K", "R", zero, "a_q", "b_q",
                [B("b_p"), band("H", "R", 0, None), X("Pbar"), X("P"), band("H", "R", None, 0), B("a_p")]),
    }
    top = [B("b_q"), band("K", "R", 0, None), X("Qbar"), X("Q"), band("K", "R", None, 0), B("a_q"),
           B("b_p"), band("H", "R", 0, None), X("Pbar"), X("P"), band("H", "R", None, 0), B("a_p")]
    return _assemble("UnlinkedGeometric", groups, generators, values, GEOMETRIC_ORDER, GEOMETRIC_RELS,
                     seed_table, top)


PARALLEL_ORDER = ["P", "u1", "v4", "Qbar", "u2", "v1", "u3", "v2", "Q", "u4", "v3", "Pbar"]
PARALLEL_RELS = ["<", "<=", "<", "<", "<=", "<", "<=", "<", "<", "<=", "<", "<"]


def build_unlinked_parallel_model(lam_p: TranslationGroup, lam_q: TranslationGroup,
                                  points: Mapping[str, Fraction], gaps: Sequence[tuple],
                                  offset=Fraction(1, 2), generators=DEFAULT_GENERATORS,
                                  allow_unverified: bool = False) -> ModelConfig:
    """Unlinked non-geometric layout: I_1, I_3 right gaps of p (I_3 at chart address
    `offset`), I_2 a left gap and I_4 a right gap of q."""
    if not allow_unverified:
        raise PreconditionViolated("non-geometric unlinked models need allow_unverified=True")
    groups = _groups(lam_p, lam_q)
    c = offset if isinstance(offset, Surd) else Surd(offset)
    if lam_p.contains(c):
        raise PreconditionViolated(f"seed addresses 0 and {c} lie in one coset of Lambda_p")
    values = dict(points)
    for i, (u, v) in enumerate(gaps, start=1):
        values[f"u{i}"], values[f"v{i}"] = u, v
    zero = Surd(0)
    seed_table = {
        "I_1": ("H", "R", zero, "u1", "v1",
                [B("v4"), band("K", "R", 0, None), X("Qbar"), band("K", "L", 0, None, False), B("u2")]),
        "I_3": ("H", "R", c, "u3", "v3",
                [B("v2"), band("K", "L", None, 0, False), X("Q"), band("K", "R", None, 0), B("u4")]),
        "I_2": ("K", "L", zero, "u2", "v2", [B("v1"), band("H", "R", 0, c), B("u3")]),
        "I_4": ("K", "R", zero, "u4", "v4",
                [B("v3"), band("H", "R", c, None), X("Pbar"), X("P"), band("H", "R", None, 0), B("u1")]),
    }
    top = [X("P"), band("H", "R", None, 0), B("u1"), B("v4"), band("K", "R", 0, None), X("Qbar"),
           band("K", "L", 0, None, False), B("u2"), B("v1"), band("H", "R", 0, c), B("u3"), B("v2"),
           band("K", "L", None, 0, False), X("Q"), band("K", "R", None, 0), B("u4"), B("v3"),
           band("H", "R", c, None), X("Pbar")]
    return _assemble("UnlinkedParallel", groups, generators, values, PARALLEL_ORDER, PARALLEL_RELS,
                     seed_table, top, unverified=True)


def sqrt2_group() -> TranslationGroup:
    return TranslationGroup(Surd(1), Surd(0, 1, 2))


def flagship_linked_model(lam: Optional[TranslationGroup] = None) -> ModelConfig:
    """Lambda = Z + Z*sqrt2 on both points, symmetric abutting seeds."""
    lam = lam or sqrt2_group()
    F = Fraction
    points = {"P": F(0), "Q": F(1, 4), "Pbar": F(1, 2), "Qbar": F(3, 4)}
    gaps = {"I_p": (F(7, 8), F(1, 8)), "I_q": (F(1, 8), F(3, 8)),
            "I_pbar": (F(3, 8), F(5, 8)), "I_qbar": (F(5, 8), F(7, 8))}
    return build_linked_model(lam, lam, points, gaps)
