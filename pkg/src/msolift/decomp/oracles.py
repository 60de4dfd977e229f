"""Exponential reference procedures for small graphs."""

import logging
from typing import Optional

from msolift.config import get_settings
from msolift.core.structures import Graph
from msolift.errors import CapacityError

logger = logging.getLogger(__name__)


def _index(G: Graph) -> tuple[list[int], list[int]]:
    vertices = sorted(G.vertices)
    position = {v: i for i, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for v, w in G.edges:
        adj[position[v]] |= 1 << position[w]
        adj[position[w]] |= 1 << position[v]
    return vertices, adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def treewidth_exact(G: Graph, cap: Optional[int] = None) -> int:
    """
    Exact treewidth by dynamic programming over vertex subsets.

    TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where Q(S, v)
    holds the vertices outside S + v reachable from v through S.
    The empty graph has treewidth -1.

    Raises CapacityError above the oracle cap.
    """
    cap = get_settings().treewidth_oracle_cap if cap is None else cap
    n = len(G.vertices)
    if n > cap:
        raise CapacityError(f"Treewidth oracle is limited to {cap} vertices, got {n}", cap)
    if n == 0:
        return -1
    _, adj = _index(G)
    full = (1 << n) - 1

    def q_size(S: int, v: int) -> int:
        reach = 0
        frontier = adj[v] & S
        seen = frontier
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= adj[x]
            frontier = nxt & S & ~seen
            seen |= frontier
        for x in _bits(seen):
            reach |= adj[x]
        reach |= adj[v]
        reach &= full & ~S & ~(1 << v)
        return bin(reach).count("1")

    tw = [0] * (1 << n)
    tw[0] = -1
    for S in range(1, 1 << n):
        best = n
        for v in _bits(S):
            rest = S & ~(1 << v)
            value = max(tw[rest], q_size(rest, v))
            if value < best:
                best = value
        tw[S] = best
    logger.debug("✓ treewidth of %d-vertex graph: %d", n, tw[full])
    return tw[full]


def _connected_masks(adj: list[int], n: int) -> list[int]:
    found = []
    for mask in range(1, 1 << n):
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for x in _bits(frontier):
                nxt |= adj[x]
            frontier = nxt & mask & ~seen
            seen |= frontier
        if seen == mask:
            found.append(mask)
    return sorted(found, key=lambda m: (bin(m).count("1"), m))


def has_minor(G: Graph, H: Graph, host_cap: Optional[int] = None, pattern_cap: Optional[int] = None) -> bool:
    """
    Whether H is a minor of G, by backtracking over disjoint connected
    branch sets.

    Raises CapacityError when G or H exceed the oracle caps.
    """
    settings = get_settings()
    host_cap = settings.minor_host_cap if host_cap is None else host_cap
    pattern_cap = settings.minor_pattern_cap if pattern_cap is None else pattern_cap
    if len(G.vertices) > host_cap:
        raise CapacityError(f"Minor oracle host is limited to {host_cap} vertices", host_cap)
    if len(H.vertices) > pattern_cap:
        raise CapacityError(f"Minor oracle pattern is limited to {pattern_cap} vertices", pattern_cap)
    if len(H.vertices) > len(G.vertices) or len(H.edges) > len(G.edges):
        return False
    if not H.vertices:
        return True

    n = len(G.vertices)
    _, adj = _index(G)
    candidates = _connected_masks(adj, n)
    neighborhood = {}
    for mask in candidates:
        reach = 0
        for x in _bits(mask):
            reach |= adj[x]
        neighborhood[mask] = reach & ~mask

    # pattern vertices by decreasing degree, then breadth-first so neighbors come early
    pattern = sorted(H.vertices, key=lambda h: (-len(H.neighbors(h)), h))
    placed_order: list[int] = []
    remaining = set(pattern)
    while remaining:
        start = next(h for h in pattern if h in remaining)
        queue = [start]
        remaining.discard(start)
        while queue:
            h = queue.pop(0)
            placed_order.append(h)
            for w in sorted(H.neighbors(h), key=lambda x: (-len(H.neighbors(x)), x)):
                if w in remaining:
                    remaining.discard(w)
                    queue.append(w)
    earlier = {
        h: [w for w in placed_order[:i] if H.adjacent(h, w)] for i, h in enumerate(placed_order)
    }
    branch: dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == len(placed_order):
            return True
        h = placed_order[i]
        free = n - bin(used).count("1")
        left = len(placed_order) - i
        for mask in candidates:
            size = bin(mask).count("1")
            if free - size < left - 1:
                break
            if mask & used:
                continue
            if any(not (neighborhood[mask] & branch[w]) for w in earlier[h]):
                continue
            branch[h] = mask
            if place(i + 1, used | mask):
                return True
            del branch[h]
        return False

    return place(0, 0)
