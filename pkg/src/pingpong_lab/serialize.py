"""Deterministic JSON encoding of exact values."""

from __future__ import annotations

import enum
import json
from collections import Counter

from .circle import INF, Arc, ArcSet
from .moebius import FixedPair, MoebiusMap
from .surd import Surd


def encode(x):
    """Exact values become tagged objects; surds carry a non-normative decimal."""
    if x is INF:
        return "inf"
    if isinstance(x, Surd):
        return {"surd": list(x.to_tuple()), "approx": f"{float(x):.12g}"}
    if isinstance(x, Arc):
        return [encode(x.lo), encode(x.hi)]
    if isinstance(x, ArcSet):
        return [encode(a) for a in x.arcs]
    if isinstance(x, MoebiusMap):
        return [[x.a, x.b], [x.c, x.d]]
    if isinstance(x, FixedPair):
        return {"attracting": encode(x.attracting), "repelling": encode(x.repelling)}
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, Counter):
        return {str(k): v for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


def decode_point(obj):
    """Inverse of encode on circle points."""
    if obj == "inf":
        return INF
    return Surd.from_tuple(obj["surd"])


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2, sort_keys=True, ensure_ascii=True) + "\n"
