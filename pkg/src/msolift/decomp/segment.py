import logging

import networkx as nx

from msolift.core.decomposition import NodeKind, SegmentedDecomposition, TreeDecomposition
from msolift.core.unionfind import UnionFind
from msolift.errors import ContractError

logger = logging.getLogger(__name__)


def _contract(D: TreeDecomposition) -> tuple[int, dict[int, frozenset[int]], dict[int, set[int]]]:
    """Contract edges whose bags are nested until none remain; the larger bag survives, the parent on ties."""
    bags = dict(D.bags)
    children = {t: list(D.children[t]) for t in D.nodes}
    parent = {u: t for t, u in D.edges()}
    root = D.root

    def first_nested_edge():
        stack = [root]
        while stack:
            t = stack.pop()
            for u in sorted(children[t]):
                if bags[u] <= bags[t] or bags[t] <= bags[u]:
                    return t, u
            stack.extend(sorted(children[t], reverse=True))
        return None

    while True:
        edge = first_nested_edge()
        if edge is None:
            break
        t, u = edge
        if bags[u] <= bags[t]:
            survivor, gone = t, u
        else:
            survivor, gone = u, t
        if survivor == t:
            children[t].remove(u)
            for w in children[u]:
                parent[w] = t
                children[t].append(w)
        else:
            up = parent.get(t)
            children[t].remove(u)
            for w in children[t]:
                parent[w] = u
                children[u].append(w)
            if up is None:
                root = u
                parent.pop(u, None)
            else:
                children[up].remove(t)
                children[up].append(u)
                parent[u] = up
        del bags[gone]
        del children[gone]
        parent.pop(gone, None)
    return root, bags, {t: set(cs) for t, cs in children.items()}


def segment(D: TreeDecomposition) -> SegmentedDecomposition:
    """
    Segmented decomposition with the same width.

    Nested-bag edges are contracted first; then every edge tu gets an a-node
    with bag β(t) ∩ β(u) between its ends, and a-nodes next to the same
    b-node with equal bags are identified. Surviving nodes keep their ids and
    become b-nodes; a-nodes get fresh ids after the largest one. provenance
    maps every node to the node of D it came from (the upper end for a-nodes).
    """
    root, bags, children = _contract(D)
    tree_edges = sorted((t, u) for t, cs in children.items() for u in cs)

    next_id = max(D.nodes) + 1
    a_nodes = {}
    for t, u in tree_edges:
        a_nodes[(t, u)] = bags[t] & bags[u]

    uf = UnionFind()
    for edge in a_nodes:
        uf.add(edge)
    by_b_node: dict = {}
    for (t, u), bag in a_nodes.items():
        by_b_node.setdefault((t, bag), []).append((t, u))
        by_b_node.setdefault((u, bag), []).append((t, u))
    for group in by_b_node.values():
        for other in group[1:]:
            uf.union(group[0], other)

    ids = {}
    for group in uf.classes():
        ids[min(group)] = next_id
        next_id += 1
    tree = nx.Graph()
    tree.add_nodes_from(bags)
    all_bags = dict(bags)
    kinds = {t: NodeKind.B_NODE for t in bags}
    provenance = {t: t for t in bags}
    for (t, u), bag in a_nodes.items():
        a = ids[uf.find((t, u))]
        all_bags[a] = bag
        kinds[a] = NodeKind.A_NODE
        provenance.setdefault(a, t)
        tree.add_edge(t, a)
        tree.add_edge(a, u)
    if not nx.is_tree(tree):
        raise ContractError("Identifying a-nodes did not leave a tree")

    oriented = {t: [] for t in tree.nodes}
    for p, c in nx.bfs_edges(tree, root):
        oriented[p].append(c)
    result = SegmentedDecomposition(
        root=root,
        bags=all_bags,
        children={t: tuple(cs) for t, cs in oriented.items()},
        kinds=kinds,
        provenance=provenance,
    )
    logger.debug("✓ segmented %d nodes into %d b-nodes and %d a-nodes", len(D.nodes), len(bags), len(ids))
    return result
