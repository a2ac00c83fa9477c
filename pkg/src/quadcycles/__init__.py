"""Exact mod-2 cycle calculus on powers of split quadrics, with an EDI rule engine."""

from .cycles import Cycle, cross, hpow, lcls
from .edi import EDITable, WittContext, enumerate_admissible, propagate
from .expr import evaluate, parse_expr, to_text
from .ring import BasisClass, H, L, LPrime, QuadricContext

__all__ = [
    "BasisClass", "Cycle", "EDITable", "H", "L", "LPrime", "QuadricContext", "WittContext",
    "cross", "enumerate_admissible", "evaluate", "hpow", "lcls", "parse_expr", "propagate",
    "to_text",
]
