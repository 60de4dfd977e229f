import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from msolift.config import get_settings
from msolift.core.structures import Structure
from msolift.errors import CapacityError, ContractError
from msolift.logic.evaluate import evaluate
from msolift.logic.formulas import Formula, free_variables, mentions_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    orders_checked: int = 0


def check_order_invariance(phi: Formula, A: Structure, cap: Optional[int] = None) -> InvarianceResult:
    """
    Decide whether the sentence φ gives the same answer under every linear order of U(A).

    Orders are enumerated in lexicographic order of the sorted universe; the
    witness pairs the first order with the first one that disagrees.
    """
    if free_variables(phi):
        raise ContractError(f"Order invariance needs a sentence, free: {sorted(free_variables(phi))}")
    if not mentions_order(phi):
        return InvarianceResult(invariant=True)
    cap = get_settings().order_cap if cap is None else cap
    if A.size > cap:
        raise CapacityError(f"Universe of size {A.size} exceeds the order cap {cap}", cap)

    reference_order = None
    reference = None
    checked = 0
    for order in permutations(A.elements):
        checked += 1
        value = evaluate(A, {}, phi, order)
        if reference_order is None:
            reference_order, reference = order, value
        elif value != reference:
            logger.info("✗ not order-invariant: %s vs %s", reference_order, order)
            return InvarianceResult(False, (reference_order, order), checked)
    return InvarianceResult(invariant=True, orders_checked=checked)
