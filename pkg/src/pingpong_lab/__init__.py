"""Exact ping-pong partitions for free products of abelian circle groups."""

from .circle import Arc, ArcSet, arcset, circular_order
from .moebius import MoebiusMap
from .surd import Surd

__all__ = ["Arc", "ArcSet", "MoebiusMap", "Surd", "arcset", "circular_order"]
