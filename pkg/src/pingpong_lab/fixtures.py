"""Reproducible fixture corpora for the unlinked classifier and the flagship model."""

from __future__ import annotations

import random
from fractions import Fraction

from .circle import Arc, point
from .layouts import flagship_linked_model
from .moebius import MoebiusMap
from .pingpong import build_linked_partition
from .unlinked import GapData, conjugator

F = Fraction


def _cyclic_values(rng: random.Random, ties: set) -> list:
    """Twelve increasing values in [0, 1); position i repeats i-1 when i is in ties."""
    cuts = sorted(rng.sample(range(1, 1000), 12))
    out = []
    for i, c in enumerate(cuts):
        out.append(out[-1] if i in ties and out else F(c, 1000))
    return out


# chain positions: u1 v6 u2 v1 u3 v2 u4 v3 u5 v4 u6 v5, ties allowed where "<=" holds
HEX_TIES = (1, 3, 5, 7, 9, 11)


def hexagon_fixture(seed: int) -> GapData:
    rng = random.Random(f"hexagon/{seed}")
    ties = {i for i in HEX_TIES if rng.random() < 0.3}
    vals = dict(zip(["u1", "v6", "u2", "v1", "u3", "v2", "u4", "v3", "u5", "v4", "u6", "v5"],
                    _cyclic_values(rng, ties)))
    mid = lambda a, b: (a + b) / 2 if a < b else ((a + b + 1) / 2) % 1
    pts = {"qbar": mid(vals["v6"], vals["u2"]), "q": mid(vals["v2"], vals["u4"]),
           "pbar": mid(vals["v3"], vals["u5"]), "p": mid(vals["v5"], vals["u1"])}
    gap = lambda i: (vals[f"u{i}"], vals[f"v{i}"])
    return GapData.of(pts, {"p": {"R": [gap(1), gap(3)], "L": [gap(5)]},
                            "q": {"R": [gap(4), gap(6)], "L": [gap(2)]}})


def hexagon_corpus(n: int = 20) -> list:
    return [hexagon_fixture(i) for i in range(n)]


def same_orbit_fixture(seed: int) -> tuple:
    """Geometric gap data with q = g(p), qbar = g(pbar); returns (data, g)."""
    rng = random.Random(f"same-orbit/{seed}")
    p, qbar, q, pbar = sorted(F(v, 8) for v in rng.sample(range(-32, 33), 4))
    g = conjugator(p, pbar, q, qbar)
    P, Qb, Q, Pb = (point(x) for x in (p, qbar, q, pbar))
    for k in range(1, 40):
        a, b = p + (qbar - p) / 2 ** k, pbar - (pbar - q) / 2 ** k
        ga, gb = g(a), g(b)
        R_q = Arc(ga, gb)
        if R_q.contains(Pb) and R_q.contains(P) and Arc(Q, point(b)).contains(ga) \
                and Arc(point(a), Qb).contains(gb):
            data = GapData.of({"p": P, "qbar": Qb, "q": Q, "pbar": Pb},
                              {"p": {"R": [(a, b)]}, "q": {"R": [R_q]}})
            return data, g
    raise RuntimeError(f"no Schottky arcs found for seed {seed}")


def same_orbit_corpus(n: int = 10) -> list:
    return [same_orbit_fixture(i) for i in range(n)]


PARALLEL_POINTS = {"p": F(0), "qbar": F(1, 4), "q": F(1, 2), "pbar": F(3, 4)}


def parallel_gap_data() -> GapData:
    """Flanking layout with two right gaps of p, mislabeled when read as same-orbit data."""
    return GapData.of(PARALLEL_POINTS,
                      {"p": {"R": [(F(1, 8), F(3, 8)), (F(13, 32), F(5, 8))]},
                       "q": {"L": [(F(5, 16), F(7, 16))], "R": [(F(9, 16), F(3, 16))]}})


def mirrored_gap_data() -> GapData:
    """Flanking layout with the roles of p and q exchanged."""
    return GapData.of(PARALLEL_POINTS,
                      {"p": {"R": [(F(3, 16), F(9, 16))], "L": [(F(13, 16), F(15, 16))]},
                       "q": {"R": [(F(7, 8), F(7, 32)), (F(17, 32), F(13, 16))]}})


def mislabeled_fixture() -> tuple:
    pts = PARALLEL_POINTS
    return parallel_gap_data(), conjugator(pts["p"], pts["pbar"], pts["q"], pts["qbar"])


def geometric_gap_data() -> GapData:
    return GapData.of({"p": F(13, 16), "pbar": F(11, 16), "qbar": F(1, 8), "q": F(3, 8)},
                      {"p": {"R": [(F(7, 8), F(5, 8))]}, "q": {"R": [(F(1, 2), F(1, 16))]}})


def flagship():
    """The symmetric abutting linked model and its partition."""
    model = flagship_linked_model()
    arc = lambda name: model.seeds[name].arc
    c = model.coords
    part = build_linked_partition(arc("I_p"), arc("I_pbar"), arc("I_q"), arc("I_qbar"),
                                  c["P"], c["Q"], c["Pbar"], c["Qbar"])
    return model, part


def schottky_pair() -> tuple:
    return MoebiusMap(4, 0, 0, 1), MoebiusMap(5, -3, -3, 5) ** 3
