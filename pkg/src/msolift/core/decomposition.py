from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional

from msolift.core.structures import Graph, Structure, gaifman, induced
from msolift.errors import DomainError


class NodeKind(str, Enum):
    ATOM = "atom"
    SEPARATOR = "separator"
    A_NODE = "a"
    B_NODE = "b"


@dataclass(frozen=True)
class TreeDecomposition:
    """
    Rooted tree with bags. Node ids are non-negative integers that live in
    their own id space, separate from the structure universe.

    children lists are sorted by id; kinds and provenance are optional
    annotations (provenance maps a node to the node it was derived from).
    """

    root: int
    bags: Mapping[int, frozenset[int]]
    children: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    kinds: Mapping[int, NodeKind] = field(default_factory=dict)
    provenance: Mapping[int, int] = field(default_factory=dict)

    __hash__ = None

    def __post_init__(self):
        bags = {int(t): frozenset(int(v) for v in bag) for t, bag in self.bags.items()}
        if self.root not in bags:
            raise DomainError(f"Root {self.root} has no bag")
        for t in self.children:
            if t not in bags:
                raise DomainError(f"Node {t} has children but no bag")
        children = {t: tuple(sorted(int(u) for u in self.children.get(t, ()))) for t in bags}
        parents = {}
        for t, cs in children.items():
            for u in cs:
                if u not in bags:
                    raise DomainError(f"Child {u} of {t} has no bag")
                if u in parents or u == self.root:
                    raise DomainError(f"Node {u} has more than one parent")
                parents[u] = t
        seen = {self.root}
        stack = [self.root]
        while stack:
            t = stack.pop()
            for u in children[t]:
                seen.add(u)
                stack.append(u)
        if seen != set(bags):
            raise DomainError(f"Nodes {sorted(set(bags) - seen)} are not reachable from the root")
        kinds = {int(t): NodeKind(k) for t, k in self.kinds.items()}
        for t in kinds:
            if t not in bags:
                raise DomainError(f"Kind given for unknown node {t}")
        object.__setattr__(self, "bags", bags)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "provenance", {int(t): int(s) for t, s in self.provenance.items()})
        object.__setattr__(self, "_parents", parents)

    @classmethod
    def single(cls, bag: Iterable[int], node: int = 0, kind: Optional[NodeKind] = None):
        return cls(root=node, bags={node: frozenset(bag)}, kinds={node: kind} if kind else {})

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.bags)

    def _check(self, t: int) -> None:
        if t not in self.bags:
            raise DomainError(f"Unknown node: {t}")

    def bag(self, t: int) -> frozenset[int]:
        self._check(t)
        return self.bags[t]

    def parent(self, t: int) -> Optional[int]:
        self._check(t)
        return self._parents.get(t)

    def kind(self, t: int) -> Optional[NodeKind]:
        self._check(t)
        return self.kinds.get(t)

    def neighbors(self, t: int) -> tuple[int, ...]:
        p = self.parent(t)
        return ((p,) if p is not None else ()) + self.children[t]

    def edges(self) -> list[tuple[int, int]]:
        """(parent, child) pairs in preorder."""
        return [(t, u) for t in self.preorder() for u in self.children[t]]

    @cached_property
    def _preorder(self) -> tuple[int, ...]:
        order = []
        stack = [self.root]
        while stack:
            t = stack.pop()
            order.append(t)
            stack.extend(reversed(self.children[t]))
        return tuple(order)

    def preorder(self) -> tuple[int, ...]:
        return self._preorder

    def postorder(self) -> tuple[int, ...]:
        order = []
        stack = [(self.root, False)]
        while stack:
            t, done = stack.pop()
            if done:
                order.append(t)
                continue
            stack.append((t, True))
            for u in reversed(self.children[t]):
                stack.append((u, False))
        return tuple(order)

    def subtree(self, t: int) -> frozenset[int]:
        self._check(t)
        nodes = set()
        stack = [t]
        while stack:
            s = stack.pop()
            nodes.add(s)
            stack.extend(self.children[s])
        return frozenset(nodes)

    def ancestors(self, t: int) -> tuple[int, ...]:
        """Proper ancestors, nearest first."""
        result = []
        p = self.parent(t)
        while p is not None:
            result.append(p)
            p = self._parents.get(p)
        return tuple(result)

    def is_ancestor(self, s: int, t: int) -> bool:
        """s ⊴ t (reflexive)."""
        return s == t or s in self.ancestors(t)

    def depth(self, t: int) -> int:
        return len(self.ancestors(t))

    def leaves(self) -> tuple[int, ...]:
        return tuple(t for t in self.preorder() if not self.children[t])

    def restrict_to_subtree(self, t: int) -> "TreeDecomposition":
        nodes = self.subtree(t)
        return TreeDecomposition(
            root=t,
            bags={s: self.bags[s] for s in nodes},
            children={s: self.children[s] for s in nodes},
            kinds={s: k for s, k in self.kinds.items() if s in nodes},
            provenance={s: p for s, p in self.provenance.items() if s in nodes},
        )

    def with_kinds(self, kinds: Mapping[int, NodeKind]) -> "TreeDecomposition":
        return TreeDecomposition(self.root, self.bags, self.children, kinds, self.provenance)


@dataclass(frozen=True)
class Violation:
    condition: str  # "bag", "cover", "connectedness"
    witness: tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_decomposition(A: Structure, D: TreeDecomposition) -> ValidationReport:
    """
    Check bags, the cover condition and the connectedness condition.

    Returns: ValidationReport listing every violated condition with a witness
    (element for connectedness and bags, tuple for cover).
    """
    violations = []
    for t in D.preorder():
        for v in sorted(D.bags[t] - A.universe):
            violations.append(Violation("bag", (v,), f"node {t} holds non-element {v}"))

    bags = list(D.bags.values())
    for name in A.vocabulary.names:
        for tup in sorted(A.relations[name]):
            members = set(tup)
            if not any(members <= bag for bag in bags):
                violations.append(Violation("cover", tup, f"{name}{tup} lies in no bag"))

    for v in sorted(A.universe):
        holding = {t for t in D.nodes if v in D.bags[t]}
        if not holding:
            violations.append(Violation("connectedness", (v,), f"{v} occurs in no bag"))
            continue
        tops = [t for t in holding if D.parent(t) not in holding]
        if len(tops) != 1:
            violations.append(
                Violation("connectedness", (v,), f"{v} occurs in {len(tops)} disconnected subtrees")
            )
    return ValidationReport(tuple(violations))


@dataclass(frozen=True)
class DecompositionMetrics:
    width: int
    adhesion: int
    empty: bool = False


def metrics(D: TreeDecomposition) -> DecompositionMetrics:
    largest = max(len(bag) for bag in D.bags.values())
    adhesion = max((len(D.bags[t] & D.bags[u]) for t, u in D.edges()), default=0)
    if largest == 0:
        return DecompositionMetrics(width=0, adhesion=adhesion, empty=True)
    return DecompositionMetrics(width=largest - 1, adhesion=adhesion)


def separator(D: TreeDecomposition, t: int) -> frozenset[int]:
    """σ(t) = β(t) ∩ β(parent(t)); empty at the root."""
    p = D.parent(t)
    if p is None:
        return frozenset()
    return D.bags[t] & D.bags[p]


def cone(D: TreeDecomposition, t: int) -> frozenset[int]:
    """γ(t): union of the bags in the subtree of t."""
    result = set()
    for s in D.subtree(t):
        result |= D.bags[s]
    return frozenset(result)


def node_sets(D: TreeDecomposition, t: int) -> tuple[frozenset[int], frozenset[int]]:
    return separator(D, t), cone(D, t)


def torso(A: Structure, D: TreeDecomposition, t: int) -> Graph:
    bag = D.bag(t)
    G = induced(gaifman(A), bag)
    extra = []
    for u in D.neighbors(t):
        shared = sorted(bag & D.bags[u])
        extra.extend(combinations(shared, 2))
    return G.with_edges(extra)


def segmented_violations(D: TreeDecomposition) -> list[str]:
    """
    The four segmented conditions, plus "every node has an a/b kind".

    Returns: list of human-readable violations (empty when D is segmented).
    """
    problems = []
    for t in D.preorder():
        if D.kinds.get(t) not in (NodeKind.A_NODE, NodeKind.B_NODE):
            problems.append(f"node {t} is neither an a-node nor a b-node")
    if problems:
        return problems
    for t, u in D.edges():
        if D.kinds[t] == D.kinds[u]:
            problems.append(f"edge {t}-{u} joins two {D.kinds[t].value}-nodes")
    for t in D.preorder():
        neighbors = D.neighbors(t)
        bag = D.bags[t]
        for u1, u2 in combinations(neighbors, 2):
            if D.kinds[t] == NodeKind.A_NODE:
                if bag != D.bags[u1] & D.bags[u2]:
                    problems.append(f"a-node {t}: bag differs from intersection of {u1} and {u2}")
            elif bag & D.bags[u1] == bag & D.bags[u2]:
                problems.append(f"b-node {t}: neighbors {u1} and {u2} share the same intersection")
        if not D.children[t] and D.kinds[t] != NodeKind.B_NODE:
            problems.append(f"leaf {t} is not a b-node")
    return problems


def is_segmented(D: TreeDecomposition) -> bool:
    return not segmented_violations(D)


class SegmentedDecomposition(TreeDecomposition):
    """A tree decomposition whose a-/b-node kinds satisfy the segmented conditions."""

    def __post_init__(self):
        super().__post_init__()
        problems = segmented_violations(self)
        if problems:
            raise DomainError(f"Not segmented: {problems[0]}")

    @classmethod
    def of(cls, D: TreeDecomposition) -> "SegmentedDecomposition":
        return cls(D.root, D.bags, D.children, D.kinds, D.provenance)

    def is_a_node(self, t: int) -> bool:
        return self.kind(t) == NodeKind.A_NODE

    def is_b_node(self, t: int) -> bool:
        return self.kind(t) == NodeKind.B_NODE
