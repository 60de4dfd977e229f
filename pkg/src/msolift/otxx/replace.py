import logging

from msolift.core.decomposition import SegmentedDecomposition
from msolift.core.structures import Structure, induced
from msolift.errors import ContractError, DomainError
from msolift.otxx.build import Otxx

logger = logging.getLogger(__name__)


def _check_node(X: Otxx, t: int) -> None:
    if t not in X.nodes:
        raise DomainError(f"Unknown node: {t}")


def sub_otxx(X: Otxx, t: int) -> Otxx:
    """X_t: the subtree of t with the cone γ(t); σ(t) becomes the ordered root separator."""
    _check_node(X, t)
    if t == X.root:
        return X
    nodes = X.tree.subtree(t)
    return Otxx(
        base=induced(X.base, X.gamma[t]),
        tree=SegmentedDecomposition.of(X.tree.restrict_to_subtree(t)),
        bag_orders={s: X.bag_orders[s] for s in nodes},
        k=X.k,
        root_separator=X.separator_sequence(t),
    )


def local_structure(X: Otxx, t: int) -> Structure:
    """X restricted to t, its bag and its children."""
    _check_node(X, t)
    return induced(X.structure, {t} | X.tree.bags[t] | set(X.tree.children[t]))


def interface(X: Otxx, t: int) -> tuple[int, ...]:
    """t followed by σ(t) in ⪯ order."""
    return (t,) + X.separator_sequence(t)


def interface_matches(X: Otxx, t: int, B: Otxx) -> bool:
    """Whether X[{t} ∪ σ(t)] and B[{root} ∪ σ(root)] agree along the order isomorphism."""
    mine = interface(X, t)
    theirs = interface(B, B.root)
    if len(mine) != len(theirs) or X.k != B.k or X.base.vocabulary != B.base.vocabulary:
        return False
    mapping = dict(zip(theirs, mine))
    left = induced(X.structure, mine)
    right = induced(B.structure, theirs).relabel(mapping)
    return left.relations == right.relations


def replace_with_mapping(X: Otxx, t: int, B: Otxx) -> tuple[Otxx, dict[int, int]]:
    """
    Replace the subtree of t by a copy of the sub-otxx B.

    The subtree of t is deleted except t and σ(t); B is glued along the
    unique order isomorphism of the interfaces. B's remaining elements and
    nodes get fresh ids past X's largest id, in the same relative order.

    Returns the new otxx and the map from B's ids to their ids in it.

    Raises ContractError when the interfaces differ.
    """
    _check_node(X, t)
    if not interface_matches(X, t, B):
        raise ContractError(f"Interface of node {t} does not match the replacement's root interface")
    mapping = dict(zip(interface(B, B.root), interface(X, t)))
    rest = sorted(B.universe - set(mapping))
    start = max(X.universe) + 1
    for i, x in enumerate(rest):
        mapping[x] = start + i

    dropped_nodes = X.tree.subtree(t) - {t}
    dropped_elements = X.gamma[t] - X.sigma[t]
    kept_elements = X.elements - dropped_elements
    kept_base = induced(X.base, kept_elements)
    glued = B.base.relabel(mapping)
    relations = {
        name: kept_base.relations[name] | glued.relations[name] for name in X.base.vocabulary.names
    }
    base = X.base._rebuild(kept_elements | glued.universe, relations)

    bags = {s: b for s, b in X.tree.bags.items() if s not in dropped_nodes}
    children = {s: cs for s, cs in X.tree.children.items() if s not in dropped_nodes}
    kinds = {s: k for s, k in X.tree.kinds.items() if s not in dropped_nodes}
    provenance = {s: p for s, p in X.tree.provenance.items() if s not in dropped_nodes}
    orders = {s: o for s, o in X.bag_orders.items() if s not in dropped_nodes}
    for s in B.nodes:
        new = mapping[s]
        bags[new] = frozenset(mapping[v] for v in B.tree.bags[s])
        children[new] = tuple(mapping[u] for u in B.tree.children[s])
        kinds[new] = B.tree.kinds[s]
        orders[new] = tuple(mapping[v] for v in B.bag_orders[s])
        if s in B.tree.provenance:
            provenance[new] = B.tree.provenance[s]
    tree = SegmentedDecomposition(root=X.root, bags=bags, children=children, kinds=kinds, provenance=provenance)
    result = Otxx(base=base, tree=tree, bag_orders=orders, k=X.k, root_separator=X.root_separator)
    logger.debug("→ replaced subtree of %d (%d nodes) by %d nodes", t, len(dropped_nodes) + 1, len(B.nodes))
    return result, mapping


def replace(X: Otxx, t: int, B: Otxx) -> Otxx:
    return replace_with_mapping(X, t, B)[0]
