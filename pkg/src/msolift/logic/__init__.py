from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import (
    Formula,
    cmso_rank,
    free_variables,
    is_fo,
    is_sentence,
    moduli,
    rank,
    symbols,
)
from msolift.logic.invariance import InvarianceResult, check_order_invariance
from msolift.logic.parser import format_formula, parse_formula
from msolift.logic.transform import relativize, to_set_only

__all__ = [
    "Formula",
    "InvarianceResult",
    "check_order_invariance",
    "cmso_rank",
    "evaluate",
    "format_formula",
    "free_variables",
    "is_fo",
    "is_sentence",
    "moduli",
    "parse_formula",
    "rank",
    "relativize",
    "symbols",
    "to_set_only",
]
