"""
Ordered tree extensions.

An Otxx merges a base structure, a segmented decomposition and one linear
order per bag into a single structure. Tree nodes live in the same id space
as elements (disjoint ids). The merged structure carries, besides the base
relations:

    V_S(v), V_T(t)      element / node
    V_a(t), V_b(t)      node kinds
    E_T(t, u)           u is a child of t
    R_beta(t, v)        v in β(t)
    R_sigma(t, v)       v in σ(t)
    R_gamma(t, v)       v in γ(t)
    R_prec(t, v, w)     v precedes w in the bag order of t (reflexive)
    S_i(t, v)           v is the i-th element of σ(t) under ⪯, 1 <= i <= k
    prec(x, y)          the partial order ⪯ (reflexive)
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, cmp_to_key
from typing import Mapping, Optional

from msolift.core.decomposition import (
    NodeKind,
    SegmentedDecomposition,
    TreeDecomposition,
    metrics,
    validate_decomposition,
)
from msolift.core.structures import Graph, Structure, gaifman, induced
from msolift.errors import ContractError, DomainError
from msolift.otxx.coloring import coloring_bag_orders

logger = logging.getLogger(__name__)

OTXX_SYMBOLS = {
    "V_S": 1,
    "V_T": 1,
    "V_a": 1,
    "V_b": 1,
    "E_T": 2,
    "R_beta": 2,
    "R_sigma": 2,
    "R_gamma": 2,
    "R_prec": 3,
    "prec": 2,
}


def otxx_symbols(k: int) -> dict[str, int]:
    symbols = dict(OTXX_SYMBOLS)
    for i in range(1, k + 1):
        symbols[f"S_{i}"] = 2
    return symbols


@dataclass(frozen=True)
class Otxx:
    """
    Ordered tree extension of `base` along `tree`.

    root_separator is empty for a full otxx; a sub-otxx lists σ(root) in ⪯
    order, and those elements precede every other element.
    """

    base: Structure
    tree: SegmentedDecomposition
    bag_orders: Mapping[int, tuple[int, ...]]
    k: int
    root_separator: tuple[int, ...] = ()

    __hash__ = None

    def __post_init__(self):
        if not isinstance(self.tree, SegmentedDecomposition):
            object.__setattr__(self, "tree", SegmentedDecomposition.of(self.tree))
        orders = {int(t): tuple(int(v) for v in o) for t, o in self.bag_orders.items()}
        object.__setattr__(self, "bag_orders", orders)
        object.__setattr__(self, "root_separator", tuple(self.root_separator))
        clash = self.tree.nodes & self.base.universe
        if clash:
            raise DomainError(f"Node ids {sorted(clash)} are also element ids")
        for t in self.tree.nodes:
            order = orders.get(t)
            if order is None or len(order) != len(self.tree.bags[t]) or set(order) != self.tree.bags[t]:
                raise DomainError(f"Bag order of node {t} is not a linear order of its bag")
        for t, bag in self.tree.bags.items():
            if not bag <= self.base.universe:
                raise DomainError(f"Bag of node {t} holds non-elements {sorted(bag - self.base.universe)}")
        sep = self.root_separator
        if len(set(sep)) != len(sep) or not set(sep) <= self.tree.bags[self.tree.root]:
            raise DomainError(f"Root separator {sep} is not a subset of the root bag")
        adhesion = max(len(self.sigma[t]) for t in self.tree.nodes)
        if adhesion > self.k:
            raise DomainError(f"Adhesion {adhesion} exceeds k={self.k}")

    @property
    def elements(self) -> frozenset[int]:
        return self.base.universe

    @property
    def nodes(self) -> frozenset[int]:
        return self.tree.nodes

    @property
    def universe(self) -> frozenset[int]:
        return self.elements | self.nodes

    @property
    def root(self) -> int:
        return self.tree.root

    @cached_property
    def sigma(self) -> dict[int, frozenset[int]]:
        result = {}
        for t in self.tree.preorder():
            p = self.tree.parent(t)
            result[t] = frozenset(self.root_separator) if p is None else self.tree.bags[t] & self.tree.bags[p]
        return result

    @cached_property
    def gamma(self) -> dict[int, frozenset[int]]:
        result = {}
        for t in self.tree.postorder():
            cone = set(self.tree.bags[t])
            for u in self.tree.children[t]:
                cone |= result[u]
            result[t] = frozenset(cone)
        return result

    @cached_property
    def top(self) -> dict[int, int]:
        """t(v): the ⊴-minimal node whose bag contains v."""
        result = {}
        for t in self.tree.preorder():
            for v in self.tree.bags[t]:
                result.setdefault(v, t)
        return result

    @cached_property
    def bag_rank(self) -> dict[int, dict[int, int]]:
        return {t: {v: i for i, v in enumerate(order)} for t, order in self.bag_orders.items()}

    def sibling_sequence(self, t: int) -> tuple[int, ...]:
        """Children of a b-node in sibling order: lexicographic on σ(u) under the bag order of t."""
        rank = self.bag_rank[t]
        return tuple(
            sorted(self.tree.children[t], key=lambda u: (tuple(sorted(rank[v] for v in self.sigma[u])), u))
        )

    @cached_property
    def node_reach(self) -> dict[int, frozenset[int]]:
        """Nodes w with t ⪯ w, per node t."""
        step: dict[int, set[int]] = {t: set(self.tree.children[t]) for t in self.nodes}
        for t in self.nodes:
            if self.tree.kind(t) == NodeKind.B_NODE:
                seq = self.sibling_sequence(t)
                for u1, u2 in zip(seq, seq[1:]):
                    step[u1].add(u2)
        reach = {}
        for t in self.nodes:
            seen = {t}
            stack = [t]
            while stack:
                s = stack.pop()
                for w in step[s]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            reach[t] = frozenset(seen)
        return reach

    def precedes(self, x: int, y: int) -> bool:
        """x ⪯ y."""
        nodes = self.nodes
        if x in nodes:
            return y in self.elements or y in self.node_reach[x]
        if y in nodes:
            return False
        if x == y:
            return True
        sep = self.root_separator
        if x in sep:
            return y not in sep or sep.index(x) <= sep.index(y)
        if y in sep:
            return False
        tx, ty = self.top[x], self.top[y]
        if tx == ty:
            rank = self.bag_rank[tx]
            return rank[x] <= rank[y]
        return ty in self.node_reach[tx]

    def sort_linear(self, items) -> tuple[int, ...]:
        """Sort a ⪯-linear set; raises DomainError on an incomparable pair."""

        def compare(a, b):
            if a == b:
                return 0
            if self.precedes(a, b):
                return -1
            if self.precedes(b, a):
                return 1
            raise DomainError(f"⪯ does not compare {a} and {b}")

        return tuple(sorted(items, key=cmp_to_key(compare)))

    def separator_sequence(self, t: int) -> tuple[int, ...]:
        if t == self.root:
            return self.root_separator
        return self.sort_linear(self.sigma[t])

    @cached_property
    def structure(self) -> Structure:
        nodes = sorted(self.nodes)
        elements = sorted(self.elements)
        universe = nodes + elements
        relations = {
            "V_S": [(v,) for v in elements],
            "V_T": [(t,) for t in nodes],
            "V_a": [(t,) for t in nodes if self.tree.kind(t) == NodeKind.A_NODE],
            "V_b": [(t,) for t in nodes if self.tree.kind(t) == NodeKind.B_NODE],
            "E_T": self.tree.edges(),
            "R_beta": [(t, v) for t in nodes for v in self.tree.bags[t]],
            "R_sigma": [(t, v) for t in nodes for v in self.sigma[t]],
            "R_gamma": [(t, v) for t in nodes for v in self.gamma[t]],
            "R_prec": [
                (t, order[i], order[j])
                for t, order in self.bag_orders.items()
                for i in range(len(order))
                for j in range(i, len(order))
            ],
            "prec": [(x, y) for x in universe for y in universe if self.precedes(x, y)],
        }
        for i in range(1, self.k + 1):
            relations[f"S_{i}"] = []
        for t in nodes:
            for i, v in enumerate(self.separator_sequence(t), start=1):
                relations[f"S_{i}"].append((t, v))
        extra = {name: (arity, relations[name]) for name, arity in otxx_symbols(self.k).items()}
        carrier = Structure(self.base.vocabulary, frozenset(universe), self.base.relations)
        return carrier.expand(extra)


def shift_tree(D: TreeDecomposition, offset: int) -> TreeDecomposition:
    """Renumber node t as offset + t; provenance keeps pointing at the original ids."""
    cls = type(D)
    return cls(
        root=D.root + offset,
        bags={t + offset: b for t, b in D.bags.items()},
        children={t + offset: tuple(u + offset for u in cs) for t, cs in D.children.items()},
        kinds={t + offset: k for t, k in D.kinds.items()},
        provenance={t + offset: D.provenance.get(t, t) for t in D.nodes},
    )


@dataclass(frozen=True)
class BagOrderProvider:
    """How bags are ordered: "input-id", "bfs" or "coloring" (with k and an optional graph)."""

    strategy: str = "input-id"
    k: Optional[int] = None
    graph: Optional[Graph] = field(default=None, compare=False)

    @classmethod
    def input_id(cls) -> "BagOrderProvider":
        return cls("input-id")

    @classmethod
    def bfs(cls) -> "BagOrderProvider":
        return cls("bfs")

    @classmethod
    def coloring(cls, k: int, graph: Optional[Graph] = None) -> "BagOrderProvider":
        return cls("coloring", k, graph)

    def orders(self, A: Structure, D: TreeDecomposition) -> dict[int, tuple[int, ...]]:
        if self.strategy == "input-id":
            return {t: tuple(sorted(bag)) for t, bag in D.bags.items()}
        if self.strategy == "bfs":
            return bfs_bag_orders(self.graph or gaifman(A), D)
        if self.strategy == "coloring":
            if self.k is None:
                raise ContractError("The coloring provider needs k")
            return coloring_bag_orders(A, D, self.k, self.graph)
        raise DomainError(f"Unknown bag order strategy {self.strategy!r}")


def bfs_bag_orders(G: Graph, D: TreeDecomposition) -> dict[int, tuple[int, ...]]:
    """Bag elements by breadth-first distance from the smallest one inside the bag, ties by id."""
    orders = {}
    for t, bag in D.bags.items():
        if not bag:
            orders[t] = ()
            continue
        H = induced(G, bag)
        start = min(bag)
        distance = {start: 0}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for w in sorted(H.neighbors(v)):
                    if w not in distance:
                        distance[w] = distance[v] + 1
                        nxt.append(w)
            frontier = nxt
        unreachable = len(bag)
        orders[t] = tuple(sorted(bag, key=lambda v: (distance.get(v, unreachable), v)))
    return orders


def build_otxx(A: Structure, D: TreeDecomposition, provider: BagOrderProvider, k: int) -> Otxx:
    """
    Merge A, a segmented decomposition of A and provider-chosen bag orders.

    Node t of D becomes id offset + t, offset being one past the largest element.

    Raises ContractError when D is not a valid segmented decomposition of A,
    its adhesion exceeds k, or the provider cannot order a bag.
    """
    report = validate_decomposition(A, D)
    if not report.ok:
        v = report.violations[0]
        raise ContractError(f"Decomposition is invalid for the structure: {v.condition} {v.witness} {v.detail}")
    adhesion = metrics(D).adhesion
    if adhesion > k:
        raise ContractError(f"Adhesion {adhesion} exceeds k={k}")
    try:
        segmented = D if isinstance(D, SegmentedDecomposition) else SegmentedDecomposition.of(D)
    except DomainError as e:
        raise ContractError(str(e)) from e
    orders = provider.orders(A, segmented)
    offset = max(A.universe, default=-1) + 1
    tree = shift_tree(segmented, offset)
    X = Otxx(
        base=A,
        tree=tree,
        bag_orders={t + offset: o for t, o in orders.items()},
        k=k,
    )
    logger.info("✓ otxx built: %d elements, %d nodes, k=%d (%s)", len(X.elements), len(X.nodes), k, provider.strategy)
    return X
