"""Exact computation of orders, abelian invariants and isomorphism types for the groups J_n(m,k)."""
from .errors import CypresError, DegenerateInput, InternalError, InvalidInput, ParseError, Unsupported
from .invariants import AbelianGroup, Finite, Infinite, abelianization
from .jfamily import Structure, StructureReport, a_closed_form, a_resultant, canonical_form, classify, group_order, is_isomorphic
from .params import JParams, normalize

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "CypresError",
    "DegenerateInput",
    "Finite",
    "Infinite",
    "InternalError",
    "InvalidInput",
    "JParams",
    "ParseError",
    "Structure",
    "StructureReport",
    "Unsupported",
    "a_closed_form",
    "a_resultant",
    "abelianization",
    "canonical_form",
    "classify",
    "group_order",
    "is_isomorphic",
    "normalize",
]
