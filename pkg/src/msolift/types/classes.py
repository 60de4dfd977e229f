import logging
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Optional

from msolift.config import get_settings
from msolift.core.structures import GRAPH_VOCABULARY, ORDER_SYMBOL, Graph, Structure, Vocabulary
from msolift.core.unionfind import UnionFind
from msolift.errors import CapacityError, ContractError
from msolift.types.engine import cmso_type
from msolift.types.registry import TypeId, TypeRegistry, default_registry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrderInvariantClass:
    members: frozenset[TypeId]
    universe_cap: int
    structures_checked: int


def all_structures(vocabulary: Vocabulary, size: int, limit: Optional[int] = None) -> Iterable[Structure]:
    """
    Every structure over the vocabulary with universe {0..size-1}; simple
    graphs when the vocabulary is {E/2}.
    """
    universe = range(size)
    if vocabulary.symbols == GRAPH_VOCABULARY.symbols:
        pairs = list(combinations(universe, 2))
        if limit is not None and 2 ** len(pairs) > limit:
            raise CapacityError(f"{2 ** len(pairs)} graphs on {size} vertices exceed {limit}", limit)
        for mask in range(1 << len(pairs)):
            yield Graph.from_edges(universe, [p for i, p in enumerate(pairs) if mask >> i & 1])
        return
    candidates = [list(product(universe, repeat=arity)) for _, arity in vocabulary.symbols]
    total = 1
    for c in candidates:
        total *= 2 ** len(c)
    if limit is not None and total > limit:
        raise CapacityError(f"{total} structures of size {size} exceed {limit}", limit)
    for masks in product(*(range(1 << len(c)) for c in candidates)):
        relations = {
            name: [t for i, t in enumerate(c) if mask >> i & 1]
            for (name, _), c, mask in zip(vocabulary.symbols, candidates, masks)
        }
        yield Structure(vocabulary, frozenset(universe), relations)


def oi_type_class(
    theta: TypeId,
    universe_cap: int,
    corpus: Optional[Iterable[Structure]] = None,
    registry: Optional[TypeRegistry] = None,
) -> OrderInvariantClass:
    """
    ⟨θ⟩ restricted to realizations with at most universe_cap elements.

    Types realized by one structure under two orders are joined; the class is
    θ's connected component. The default corpus is every structure over θ's
    vocabulary (without <=) up to the cap.

    Raises ContractError when θ is unordered or not realized in the corpus.
    """
    registry = registry or default_registry()
    meta = registry.meta(theta)
    if not meta.ordered or meta.arity:
        raise ContractError(f"Type {theta} is not an ordered sentence type")
    base = Vocabulary(tuple(s for s in meta.vocabulary if s[0] != ORDER_SYMBOL))
    settings = get_settings()
    if corpus is None:
        corpus = (
            A
            for n in range(universe_cap + 1)
            for A in all_structures(base, n, limit=settings.structure_cap)
        )

    uf = UnionFind()
    checked = 0
    for A in corpus:
        if A.size > universe_cap:
            continue
        if A.size > settings.order_cap:
            raise CapacityError(f"{A.size}! orders exceed the order cap {settings.order_cap}", settings.order_cap)
        checked += 1
        first = None
        for order in permutations(A.elements):
            t = cmso_type(A, (), meta.q, meta.c, order, registry)
            uf.add(t)
            if first is None:
                first = t
            else:
                uf.union(first, t)
    if theta not in uf.parent:
        raise ContractError(f"Type {theta} is not realized by any structure with at most {universe_cap} elements")
    root = uf.find(theta)
    members = frozenset(t for t in uf.parent if uf.find(t) == root)
    logger.debug("✓ order-invariant class of %s: %d members (cap %d)", theta, len(members), universe_cap)
    return OrderInvariantClass(members, universe_cap, checked)
