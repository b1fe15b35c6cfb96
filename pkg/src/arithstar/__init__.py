"""Arithmetical structures on star and complete graphs, and their critical groups."""

from .abelian import FiniteAbelianGroup, parse_group
from .critical import critical_complete, critical_order, critical_star, critical_star_oracle
from .enumeration import EnumSpec, count_structures, enumerate_structures
from .structures import ArithmeticalStructure, DhatVector, InvalidStructureError

__version__ = "0.1.0"

__all__ = [
    "ArithmeticalStructure",
    "DhatVector",
    "EnumSpec",
    "FiniteAbelianGroup",
    "InvalidStructureError",
    "count_structures",
    "critical_complete",
    "critical_order",
    "critical_star",
    "critical_star_oracle",
    "enumerate_structures",
    "parse_group",
]
