import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import networkx as nx

from msolift.config import get_settings
from msolift.core.decomposition import NodeKind, TreeDecomposition
from msolift.core.structures import Graph, induced
from msolift.decomp.oracles import treewidth_exact
from msolift.decomp.separators import clique_separators, components, is_c_atom
from msolift.errors import ContractError

logger = logging.getLogger(__name__)


def components_decomposition(G: Graph) -> TreeDecomposition:
    """
    Root component, then an empty separator node, then every other component.

    Components are ordered by smallest vertex; the empty graph gives a single
    atom node with an empty bag.
    """
    parts = components(G)
    if not parts:
        return TreeDecomposition.single((), kind=NodeKind.ATOM)
    bags = {0: parts[0], 1: frozenset()}
    kinds = {0: NodeKind.ATOM, 1: NodeKind.SEPARATOR}
    for i, part in enumerate(parts[1:], start=2):
        bags[i] = part
        kinds[i] = NodeKind.ATOM
    children = {0: (1,), 1: tuple(range(2, len(parts) + 1))}
    return TreeDecomposition(root=0, bags=bags, children=children, kinds=kinds)


def maximal_atoms(G: Graph, c: int) -> list[frozenset[int]]:
    """Vertex sets of the maximal c-atoms of G, sorted by (smallest vertex, members)."""
    pieces: list[frozenset[int]] = []
    stack = [frozenset(G.vertices)]
    while stack:
        vertices = stack.pop()
        H = induced(G, vertices)
        found = clique_separators(H, c)
        if not found:
            pieces.append(vertices)
            continue
        S = found[0].vertices
        for part in components(H.without(S)):
            stack.append(part | S)
    unique = set(pieces)
    maximal = [p for p in unique if not any(p < other for other in unique)]
    return sorted(maximal, key=lambda p: (min(p) if p else -1, tuple(sorted(p))))


def decompose_step(
    G: Graph, c: int, root_hint: Optional[frozenset[int]] = None, first_id: int = 0
) -> TreeDecomposition:
    """
    Split a (c-1)-atom along its c-clique separators.

    Atom nodes carry the maximal c-atoms, separator nodes the c-clique
    separators; an atom and a separator are adjacent when the separator lies
    in the atom. The root is the smallest atom containing root_hint.

    Raises ContractError when G has a clique separator of size below c.
    """
    if c >= 1 and G.vertices:
        smaller = clique_separators(G, c - 1)
        if smaller:
            S = smaller[0]
            raise ContractError(
                f"Graph is not a {c - 1}-atom: clique separator {sorted(S.vertices)} "
                f"separates {S.witness[0]} and {S.witness[1]}"
            )
    atoms = maximal_atoms(G, c) if G.vertices else [frozenset()]
    separators = [S.vertices for S in clique_separators(G, c)] if G.vertices else []

    bags = {}
    kinds = {}
    for i, bag in enumerate(atoms):
        bags[first_id + i] = bag
        kinds[first_id + i] = NodeKind.ATOM
    for j, bag in enumerate(separators):
        node = first_id + len(atoms) + j
        bags[node] = bag
        kinds[node] = NodeKind.SEPARATOR

    tree = nx.Graph()
    tree.add_nodes_from(bags)
    for s in bags:
        if kinds[s] != NodeKind.SEPARATOR:
            continue
        for a in bags:
            if kinds[a] == NodeKind.ATOM and bags[s] <= bags[a]:
                tree.add_edge(s, a)
    if not nx.is_tree(tree):
        raise ContractError(f"Atoms and {c}-clique separators do not form a tree")

    hint = root_hint or frozenset()
    root = min(a for a in bags if kinds[a] == NodeKind.ATOM and hint <= bags[a])
    return _orient(tree, root, bags, kinds)


def _orient(tree: nx.Graph, root: int, bags, kinds, provenance=None) -> TreeDecomposition:
    children = {t: [] for t in tree.nodes}
    for parent, child in nx.bfs_edges(tree, root):
        children[parent].append(child)
    return TreeDecomposition(
        root=root,
        bags=bags,
        children={t: tuple(cs) for t, cs in children.items()},
        kinds=kinds,
        provenance=provenance or {},
    )


def refine(D: TreeDecomposition, c: int, G: Graph, jobs: Optional[int] = None) -> TreeDecomposition:
    """
    Replace every atom node whose bag still has a c-clique separator by its
    decompose_step tree.

    The parent separator hangs on the new root (an atom containing it); each
    child separator moves to the topmost new atom containing its bag. Nodes
    are renumbered in preorder and provenance points back into D. Steps for
    different atoms run on a thread pool when jobs > 1; results are joined
    in node order.
    """
    jobs = jobs or get_settings().jobs
    refinable = [
        t
        for t in D.preorder()
        if D.kinds.get(t) == NodeKind.ATOM and not is_c_atom(induced(G, D.bags[t]), c)
    ]
    if not refinable:
        return D

    def step(t: int) -> TreeDecomposition:
        p = D.parent(t)
        hint = D.bags[p] if p is not None else None
        return decompose_step(induced(G, D.bags[t]), c, root_hint=hint)

    if jobs > 1 and len(refinable) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            steps = dict(zip(refinable, pool.map(step, refinable)))
    else:
        steps = {t: step(t) for t in refinable}

    # temporary keys: ("o", t) for kept nodes, ("n", t, s) for node s of t's replacement
    bags = {}
    kinds = {}
    origin = {}
    edges = []
    for t in D.preorder():
        if t in steps:
            sub = steps[t]
            for s in sub.nodes:
                key = ("n", t, s)
                bags[key] = sub.bags[s]
                kinds[key] = sub.kinds[s]
                origin[key] = t
            edges.extend((("n", t, a), ("n", t, b)) for a, b in sub.edges())
        else:
            key = ("o", t)
            bags[key] = D.bags[t]
            if t in D.kinds:
                kinds[key] = D.kinds[t]
            origin[key] = t

    def attach_point(t: int, bag: frozenset[int]) -> tuple:
        if t not in steps:
            return ("o", t)
        sub = steps[t]
        s = min(
            (s for s in sub.nodes if sub.kinds[s] == NodeKind.ATOM and bag <= sub.bags[s]),
            key=lambda s: (sub.depth(s), s),
        )
        return ("n", t, s)

    for parent, child in D.edges():
        if child in steps:
            upper = attach_point(parent, D.bags[child])
            edges.append((upper, ("n", child, steps[child].root)))
        else:
            edges.append((attach_point(parent, D.bags[child]), ("o", child)))

    root_key = ("n", D.root, steps[D.root].root) if D.root in steps else ("o", D.root)
    result = _renumber(root_key, bags, kinds, origin, edges)
    logger.debug("→ refined %d atoms at c=%d: %d -> %d nodes", len(steps), c, len(D.nodes), len(result.nodes))
    return result


def _renumber(root_key, bags, kinds, origin, edges) -> TreeDecomposition:
    adjacency = {key: [] for key in bags}
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    ids = {}
    children = {}
    stack = [(root_key, None)]
    while stack:
        key, parent = stack.pop()
        ids[key] = len(ids)
        below = sorted(k for k in adjacency[key] if k != parent)
        children[key] = below
        stack.extend((k, key) for k in reversed(below))
    return TreeDecomposition(
        root=0,
        bags={ids[k]: bags[k] for k in ids},
        children={ids[k]: tuple(ids[c] for c in cs) for k, cs in children.items()},
        kinds={ids[k]: kinds[k] for k in ids if k in kinds},
        provenance={ids[k]: origin[k] for k in ids},
    )


def prune_empty_leaves(D: TreeDecomposition) -> TreeDecomposition:
    """Drop separator leaves with empty bags (left over for connected graphs)."""
    dropped = {
        t
        for t in D.nodes
        if not D.children[t] and not D.bags[t] and D.kinds.get(t) == NodeKind.SEPARATOR and t != D.root
    }
    if not dropped:
        return D
    keep = [t for t in D.nodes if t not in dropped]
    return TreeDecomposition(
        root=D.root,
        bags={t: D.bags[t] for t in keep},
        children={t: tuple(u for u in D.children[t] if u not in dropped) for t in keep},
        kinds={t: k for t, k in D.kinds.items() if t not in dropped},
        provenance={t: p for t, p in D.provenance.items() if t not in dropped},
    )


def atom_decomposition(G: Graph, k: int, trusted: bool = False, jobs: Optional[int] = None) -> TreeDecomposition:
    """
    Tree decomposition whose atom-node bags are the atoms of G and whose
    separator nodes are clique separators of size at most k+1.

    Built by refining the components decomposition for c = 1..k+1. Unless
    trusted, tw(G) <= k is checked with the exact oracle when G is small
    enough.

    Raises ContractError when tw(G) > k is detected.
    """
    if k < 0:
        raise ContractError(f"Width bound must be non-negative, got {k}")
    if not trusted:
        cap = get_settings().treewidth_oracle_cap
        if len(G.vertices) <= cap:
            tw = treewidth_exact(G)
            if tw > k:
                raise ContractError(f"Treewidth {tw} exceeds the bound {k}")
        else:
            logger.warning("✗ %d vertices exceed the treewidth oracle cap %d; assuming tw <= %d", len(G.vertices), cap, k)
    D = components_decomposition(G)
    for c in range(1, k + 2):
        D = refine(D, c, G, jobs)
    D = prune_empty_leaves(D)
    logger.info("✓ atom decomposition: %d nodes", len(D.nodes))
    return D
