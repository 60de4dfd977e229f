"""Named graph sentences used by the tests and the CLI. All are order-invariant except MIN_ISOLATED."""

from msolift.core.structures import GRAPH_VOCABULARY, Vocabulary
from msolift.logic.formulas import Formula
from msolift.logic.parser import parse_formula

BIPARTITE = (
    "EX X. ~(ex x. ex y. (x in X & y in X & E(x,y))) "
    "& ~(ex x. ex y. (~(x in X) & ~(y in X) & E(x,y)))"
)

# alternate membership along the successor relation of <=; min in X, max not in X
EVEN_LENGTH = (
    "EX X. (all x. ((all y. x <= y) -> x in X)) "
    "& (all x. ((all y. y <= x) -> ~(x in X))) "
    "& (all x. all y. ((x <= y & ~(x = y) & (all z. ((x <= z & z <= y) -> (z = x | z = y)))) "
    "-> ((x in X -> ~(y in X)) & (~(x in X) -> y in X))))"
)

EVEN_PARITY = "EX X. (all x. x in X) & C_2(X)"

HAS_EDGE = "ex x. ex y. E(x,y)"

NONEMPTY = "ex x. x = x"

HAS_ISOLATED = "ex x. ~(ex y. E(x,y))"

NO_ISOLATED = "all x. ex y. E(x,y)"

HAS_TRIANGLE = "ex x. ex y. ex z. (E(x,y) & E(y,z) & E(x,z))"

# rank 2 with the order: a least element exists iff the universe is nonempty
HAS_MINIMUM = "ex x. all y. x <= y"

ORDER_TOTAL = "all x. all y. (x <= y | y <= x)"

EVEN_EDGE_ENDPOINTS = "EX X. (all x. (x in X -> ex y. E(x,y))) & (all x. ((ex y. E(x,y)) -> x in X)) & C_2(X)"

CONNECTED = (
    "ALL X. ((ex x. x in X) & (ex x. ~(x in X))) "
    "-> (ex x. ex y. (x in X & ~(y in X) & E(x,y)))"
)

MIN_ISOLATED = "ex x. ((all y. x <= y) & ~(ex z. E(x,z)))"

ORDER_INVARIANT = {
    "bipartite": BIPARTITE,
    "even_length": EVEN_LENGTH,
    "even_parity": EVEN_PARITY,
    "has_edge": HAS_EDGE,
    "nonempty": NONEMPTY,
    "has_isolated": HAS_ISOLATED,
    "no_isolated": NO_ISOLATED,
    "has_triangle": HAS_TRIANGLE,
    "has_minimum": HAS_MINIMUM,
    "order_total": ORDER_TOTAL,
    "even_edge_endpoints": EVEN_EDGE_ENDPOINTS,
    "connected": CONNECTED,
}


def sentence(name: str, vocabulary: Vocabulary = GRAPH_VOCABULARY) -> Formula:
    text = ORDER_INVARIANT.get(name)
    if text is None:
        text = {"min_isolated": MIN_ISOLATED}[name]
    return parse_formula(text, vocabulary)
