"""
Type composition over ordered tree extensions.

Child subtrees are typed with their interface as parameters: the type of
(X_u, ≤, {u}, {s1}, ..., {sj}) where σ(u) = s1 ⪯ ... ⪯ sj. Equal child
types therefore have order-isomorphic interfaces, so a child can always be
swapped for the stored representative of its type. Composition glues the
representatives into the local part of a node and types the result
directly; the order of the glued structure keeps every child block
contiguous.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Mapping, Optional, Sequence

from msolift.config import get_settings
from msolift.core.decomposition import NodeKind
from msolift.errors import CapacityError, ContractError
from msolift.otxx.build import Otxx
from msolift.otxx.replace import interface, local_structure, replace_with_mapping, sub_otxx
from msolift.types.engine import cmso_type
from msolift.types.registry import TypeId, TypeRegistry, default_registry

logger = logging.getLogger(__name__)

TypePartition = dict[int, TypeId]
CompatibleCover = dict[int, frozenset[TypeId]]


@dataclass(frozen=True)
class Representative:
    otxx: Otxx
    order: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.order)


@dataclass
class EngineStats:
    hits: int = 0
    misses: int = 0
    largest_glued: int = 0


@dataclass(frozen=True)
class Composition:
    type_id: TypeId
    local_key: str
    sequence: tuple[int, ...]
    partition: Mapping[int, TypeId] = field(default_factory=dict)
    hit: bool = False


class CompositionEngine:
    """Representatives, memo and statistics for one rank (q, c) over one registry."""

    def __init__(
        self,
        q: int,
        c: int = 1,
        registry: Optional[TypeRegistry] = None,
        universe_cap: Optional[int] = None,
    ):
        self.q = q
        self.c = c
        self.registry = registry or default_registry()
        self.universe_cap = universe_cap
        self.representatives: dict[TypeId, Representative] = {}
        self.memo: dict[tuple, TypeId] = {}
        self.stats = EngineStats()

    def anchored_type(self, X: Otxx, order: Sequence[int]) -> TypeId:
        """Type of X under `order` with its root interface as singleton parameters."""
        order = tuple(order)
        sets = [frozenset({x}) for x in interface(X, X.root)]
        type_id = cmso_type(X.structure, sets, self.q, self.c, order, self.registry, self.universe_cap)
        self.offer(type_id, X, order)
        return type_id

    def offer(self, type_id: TypeId, X: Otxx, order: tuple[int, ...]) -> None:
        current = self.representatives.get(type_id)
        if current is None or len(order) < current.size:
            self.representatives[type_id] = Representative(X, order)

    def representative(self, type_id: TypeId) -> Representative:
        try:
            return self.representatives[type_id]
        except KeyError:
            raise ContractError(f"No representative for type {type_id}") from None

    def compose(
        self, X: Otxx, t: int, sequence: Sequence[int], partition: Mapping[int, TypeId]
    ) -> Composition:
        """Anchored type of X_t whose child blocks follow `sequence` and whose children have the given types."""
        children = X.tree.children[t]
        sequence = tuple(sequence)
        if sorted(sequence) != sorted(children):
            raise ContractError(f"Sequence {sequence} does not enumerate the children of {t}")
        missing = [u for u in children if u not in partition]
        if missing:
            raise ContractError(f"Partition misses children {missing} of node {t}")
        if not children and X.tree.kind(t) == NodeKind.A_NODE:
            raise ContractError(f"a-node {t} has no children")

        key = local_key(X, t, sequence)
        child_types = tuple(partition[u] for u in sequence)
        memo_key = (key, child_types, self.q, self.c)
        used = {u: partition[u] for u in sequence}
        cached = self.memo.get(memo_key)
        if cached is not None:
            self.stats.hits += 1
            return Composition(cached, key_digest(key), sequence, used, hit=True)
        self.stats.misses += 1

        Y, order = self.glue(X, t, sequence, partition)
        self.stats.largest_glued = max(self.stats.largest_glued, len(order))
        type_id = self.anchored_type(Y, order)
        self.memo[memo_key] = type_id
        logger.debug("→ composed node %d (%d children) into type %d", t, len(sequence), type_id)
        return Composition(type_id, key_digest(key), sequence, used)

    def glue(
        self, X: Otxx, t: int, sequence: tuple[int, ...], partition: Mapping[int, TypeId]
    ) -> tuple[Otxx, tuple[int, ...]]:
        """X_t with every child subtree replaced by its representative, and the glued block order."""
        Y = sub_otxx(X, t)
        node_blocks = []
        element_blocks = []
        for u in sequence:
            rep = self.representative(partition[u])
            Y, mapping = replace_with_mapping(Y, u, rep.otxx)
            inner = set(rep.otxx.root_separator)
            node_blocks.extend(mapping[x] for x in rep.order if x in rep.otxx.nodes)
            element_blocks.extend(
                mapping[x] for x in rep.order if x in rep.otxx.elements and x not in inner
            )
        fresh = [v for v in Y.bag_orders[t] if v not in Y.sigma[t]]
        order = (t,) + tuple(node_blocks) + Y.root_separator + tuple(fresh) + tuple(element_blocks)
        return Y, order


def local_key(X: Otxx, t: int, sequence: tuple[int, ...]) -> tuple:
    """Local structure of t relabelled by position: t, children in sequence, σ(t) in ⪯ order, new bag elements."""
    fresh = tuple(v for v in X.bag_orders[t] if v not in X.sigma[t])
    positions = (t,) + sequence + X.separator_sequence(t) + fresh
    local = local_structure(X, t).relabel({x: i for i, x in enumerate(positions)})
    return tuple((name, tuple(sorted(local.relations[name]))) for name in local.vocabulary.names)


def key_digest(key: tuple) -> str:
    return hashlib.sha1(repr(key).encode()).hexdigest()[:12]


_engines: dict[tuple[int, int], CompositionEngine] = {}


def default_engine(q: int, c: int = 1) -> CompositionEngine:
    """Shared engine per rank over the default registry."""
    engine = _engines.get((q, c))
    if engine is None:
        engine = _engines[(q, c)] = CompositionEngine(q, c)
    return engine


def type_partition(
    X: Otxx, order: Sequence[int], t: int, q: int, engine: Optional[CompositionEngine] = None
) -> TypePartition:
    """Child u of t ↦ anchored type of sub_otxx(X, u) under the restriction of `order`."""
    engine = engine or default_engine(q)
    if engine.q != q:
        raise ContractError(f"Engine works at rank {engine.q}, not {q}")
    partition = {}
    for u in X.tree.children[t]:
        sub = sub_otxx(X, u)
        restricted = tuple(x for x in order if x in sub.universe)
        partition[u] = engine.anchored_type(sub, restricted)
    return partition


def compose_b(
    X: Otxx, t: int, partition: Mapping[int, TypeId], q: int, engine: Optional[CompositionEngine] = None
) -> TypeId:
    """
    Anchored type of X_t at a b-node from the types of its children.

    Children are arranged in sibling order, which every compatible order
    respects, so the result does not depend on the order that produced the
    partition.
    """
    engine = engine or default_engine(q)
    if X.tree.kind(t) != NodeKind.B_NODE:
        raise ContractError(f"Node {t} is not a b-node")
    return engine.compose(X, t, X.sibling_sequence(t), partition).type_id


def compose_a(
    X: Otxx,
    t: int,
    sequence: Sequence[int],
    partition: Mapping[int, TypeId],
    q: int,
    engine: Optional[CompositionEngine] = None,
) -> TypeId:
    """Anchored type of X_t at an a-node whose child blocks follow `sequence`."""
    engine = engine or default_engine(q)
    if X.tree.kind(t) != NodeKind.A_NODE:
        raise ContractError(f"Node {t} is not an a-node")
    return engine.compose(X, t, sequence, partition).type_id


def _refinements(children: Sequence[int], cover: Mapping[int, frozenset[TypeId]]):
    missing = [u for u in children if not cover.get(u)]
    if missing:
        raise ContractError(f"Cover assigns no types to children {missing}")
    for choice in product(*(sorted(cover[u]) for u in children)):
        yield dict(zip(children, choice))


def oi_set_b(
    X: Otxx, t: int, cover: Mapping[int, frozenset[TypeId]], q: int, engine: Optional[CompositionEngine] = None
) -> frozenset[TypeId]:
    """compose_b over every partition that picks one type per child from the cover."""
    engine = engine or default_engine(q)
    children = X.tree.children[t]
    return frozenset(compose_b(X, t, p, q, engine) for p in _refinements(children, cover))


def oi_set_a(
    X: Otxx, t: int, cover: Mapping[int, frozenset[TypeId]], q: int, engine: Optional[CompositionEngine] = None
) -> frozenset[TypeId]:
    """
    compose_a over every ordering of the children and every partition
    refining the cover.

    Raises CapacityError when the orderings exceed the permutation cap.
    """
    engine = engine or default_engine(q)
    children = X.tree.children[t]
    cap = get_settings().permutation_cap
    count = 1
    for i in range(2, len(children) + 1):
        count *= i
    if count > cap:
        raise CapacityError(f"{count} child orderings exceed the permutation cap {cap}", cap)
    result = set()
    for p in _refinements(children, cover):
        for sequence in permutations(children):
            result.add(compose_a(X, t, sequence, p, q, engine))
    return frozenset(result)
