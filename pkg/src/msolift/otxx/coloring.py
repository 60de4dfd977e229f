import logging
from typing import Optional

from msolift.core.decomposition import TreeDecomposition, separator
from msolift.core.structures import Graph, Structure, gaifman
from msolift.errors import ContractError

logger = logging.getLogger(__name__)


def degeneracy_order(G: Graph) -> list[int]:
    """Repeatedly remove a vertex of minimum remaining degree (ties by id)."""
    degree = {v: len(G.neighbors(v)) for v in G.vertices}
    removed = set()
    order = []
    while len(order) < len(degree):
        v = min((d, v) for v, d in degree.items() if v not in removed)[1]
        order.append(v)
        removed.add(v)
        for w in G.neighbors(v):
            if w not in removed:
                degree[w] -= 1
    return order


def proper_coloring(G: Graph, bound: int) -> dict[int, int]:
    """
    Greedy coloring along the reversed degeneracy order, colors 0..bound-1.

    Raises ContractError when the greedy order needs more than bound colors.
    """
    colors: dict[int, int] = {}
    for v in reversed(degeneracy_order(G)):
        used = {colors[w] for w in G.neighbors(v) if w in colors}
        color = next(c for c in range(len(used) + 1) if c not in used)
        if color >= bound:
            raise ContractError(f"Greedy coloring needs more than {bound} colors (at vertex {v})")
        colors[v] = color
    return colors


def coloring_bag_orders(
    A: Structure, D: TreeDecomposition, k: int, graph: Optional[Graph] = None
) -> dict[int, tuple[int, ...]]:
    """
    Bag orders from a proper (k+1)-coloring of the graph (A's Gaifman graph by
    default): σ(t) first, then the rest of the bag, each part by (color, id).

    Raises ContractError when a separator is not a clique or the coloring fails.
    """
    G = graph or gaifman(A)
    for t in D.preorder():
        sep = separator(D, t)
        if not G.is_clique(sep):
            raise ContractError(f"Separator {sorted(sep)} of node {t} is not a clique")
    colors = proper_coloring(G, k + 1)

    def key(v: int) -> tuple[int, int]:
        return colors[v], v

    orders = {}
    for t in D.preorder():
        sep = separator(D, t)
        orders[t] = tuple(sorted(sep, key=key)) + tuple(sorted(D.bags[t] - sep, key=key))
    logger.debug("→ coloring bag orders with %d colors", len(set(colors.values())))
    return orders
