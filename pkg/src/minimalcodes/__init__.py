"""Minimal binary linear codes of dimension n+3 built from partial-spread Boolean functions."""
from __future__ import annotations

from .boolfn import BooleanFunction, fwht, walsh_hat, walsh_relation_holds, walsh_tilde
from .code import (LinearCode, WeightDistribution, construct_code, construct_generic_code,
                   enumerate_weights, predict_walsh, predict_weights, weight_rows)
from .gf2core import GF2Matrix, GF2t, BitVector, dot, rank
from .minimal import (MinimalityReport, ab_ratio, covers, is_minimal_bruteforce,
                      walsh_inequality_suite, walsh_minimality_criterion)
from .spread import (FamilyError, FunctionFamily, PartialSpread, PreconditionError, SetSystem,
                     build_desarguesian_spread, build_family, check_conditions,
                     check_set_consequences, search_admissible)

__all__ = [
    "BitVector", "BooleanFunction", "FamilyError", "FunctionFamily", "GF2Matrix", "GF2t",
    "LinearCode", "MinimalityReport", "PartialSpread", "PreconditionError", "SetSystem",
    "WeightDistribution", "ab_ratio", "build_desarguesian_spread", "build_family",
    "check_conditions", "check_set_consequences", "construct_code", "construct_generic_code",
    "covers", "dot", "enumerate_weights", "fwht", "is_minimal_bruteforce", "predict_walsh",
    "predict_weights", "rank", "search_admissible", "weight_rows", "walsh_hat",
    "walsh_inequality_suite", "walsh_minimality_criterion", "walsh_relation_holds",
    "walsh_tilde",
]
