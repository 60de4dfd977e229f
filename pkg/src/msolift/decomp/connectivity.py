import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Union

import networkx as nx

from msolift.config import get_settings
from msolift.core.structures import Graph
from msolift.decomp.oracles import has_minor, treewidth_exact
from msolift.decomp.separators import components, is_atom
from msolift.errors import DomainError

logger = logging.getLogger(__name__)


def disjoint_paths(G: Graph, v: int, w: int) -> int:
    """
    Maximum number of internally vertex-disjoint v-w paths (Menger). A direct
    edge counts as one path.

    Raises DomainError for v == w or unknown vertices.
    """
    if v == w:
        raise DomainError("disjoint_paths needs two distinct vertices")
    for x in (v, w):
        if x not in G.vertices:
            raise DomainError(f"Unknown vertex: {x}")
    flow = nx.DiGraph()
    for x in G.vertices:
        capacity = len(G.vertices) if x in (v, w) else 1
        flow.add_edge(("in", x), ("out", x), capacity=capacity)
    for x, y in G.edges:
        flow.add_edge(("out", x), ("in", y), capacity=1)
        flow.add_edge(("out", y), ("in", x), capacity=1)
    return int(nx.maximum_flow_value(flow, ("out", v), ("in", w)))


def improve(G: Graph, k: int) -> Graph:
    """Add vw for every non-adjacent pair joined by at least k+1 disjoint paths."""
    added = [
        (v, w)
        for v, w in combinations(sorted(G.vertices), 2)
        if not G.adjacent(v, w) and disjoint_paths(G, v, w) >= k + 1
    ]
    if added:
        logger.debug("→ improve(k=%d) added %d edges: %s", k, len(added), added)
    return G.with_edges(added)


def improve_closure(G: Graph, k: int) -> Graph:
    """Iterate improve until no edge is added."""
    current = G
    while True:
        nxt = improve(current, k)
        if nxt.edges == current.edges:
            return current
        current = nxt


def universal_pair_family(n: int) -> Graph:
    """
    n disjoint triangles plus two non-adjacent vertices joined to every
    triangle vertex. Triangles use 0..3n-1; the pair is (3n, 3n+1).
    """
    if n < 1:
        raise DomainError(f"Family index must be positive, got {n}")
    edges = []
    for i in range(n):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c), (a, c)]
        for x in (a, b, c):
            edges += [(x, 3 * n), (x, 3 * n + 1)]
    return Graph.from_edges(range(3 * n + 2), edges)


@dataclass(frozen=True)
class TwMode:
    k: int


@dataclass(frozen=True)
class MinorMode:
    ell: int


SeparabilityMode = Union[TwMode, MinorMode]


@dataclass(frozen=True)
class SeparabilityResult:
    components: int
    bound: int
    ok: bool
    precondition_ok: Optional[bool]
    detail: str = ""


def tw_separability_bound(size: int, k: int) -> int:
    return comb(size, 2) * k + 1


def minor_separability_bound(size: int, ell: int) -> int:
    if size <= 2:
        return 1
    return ell * comb(size, 3) - 1


def separability_bound(mode: SeparabilityMode, size: int) -> int:
    """Largest number of components of G - S allowed for |S| = size."""
    if isinstance(mode, TwMode):
        return tw_separability_bound(size, mode.k)
    return minor_separability_bound(size, mode.ell)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def _precondition(G: Graph, mode: SeparabilityMode) -> tuple[Optional[bool], str]:
    settings = get_settings()
    if isinstance(mode, TwMode):
        if len(G.vertices) > settings.treewidth_oracle_cap:
            return None, "graph too large to verify"
        if treewidth_exact(G) > mode.k:
            return False, f"treewidth exceeds {mode.k}"
        if improve(G, mode.k).edges != G.edges:
            return False, "graph is not improved"
        if not is_atom(G):
            return False, "graph is not an atom"
        return True, ""
    g = G.to_networkx()
    if len(G.vertices) < 4 or nx.node_connectivity(g) < 3:
        return False, "graph is not 3-connected"
    if len(G.vertices) > settings.minor_host_cap or 3 + mode.ell > settings.minor_pattern_cap:
        return None, "too large to verify minor-freeness"
    if has_minor(G, complete_bipartite(3, mode.ell)):
        return False, f"graph has a K_3,{mode.ell} minor"
    return True, ""


def separability_check(G: Graph, S: frozenset[int], mode: SeparabilityMode) -> SeparabilityResult:
    """
    Count the components of G - S against the separability bound of the mode.

    The mode's precondition is verified when the oracles allow; a failed
    precondition is reported but the count is still computed.
    """
    S = frozenset(S)
    if not S <= G.vertices:
        raise DomainError(f"Separator elements {sorted(S - G.vertices)} are not vertices")
    count = len(components(G.without(S)))
    bound = separability_bound(mode, len(S))
    precondition, detail = _precondition(G, mode)
    if precondition is False:
        logger.warning("✗ separability precondition failed: %s", detail)
    return SeparabilityResult(count, bound, count <= bound, precondition, detail)
