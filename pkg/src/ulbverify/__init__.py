"""Finite-model verification kit for uniform structures, bornologies,
coarse structures and the topologies they induce on automorphism groups."""

from .born import BornologyBasis, CoarseStructure
from .relalg import Relation
from .ulb import CarrierMap, UlbSpace
from .unif import UniformFiltration

__all__ = [
    "BornologyBasis",
    "CarrierMap",
    "CoarseStructure",
    "Relation",
    "UlbSpace",
    "UniformFiltration",
]
