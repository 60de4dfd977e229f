"""Compatible covers and the compatible-order equivalence on anchored types."""

import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from msolift.compose.engine import CompatibleCover, CompositionEngine, default_engine
from msolift.compose.pipeline import otxx_of
from msolift.config import get_settings
from msolift.core.structures import GRAPH_VOCABULARY
from msolift.core.unionfind import UnionFind
from msolift.errors import CapacityError
from msolift.otxx.build import Otxx
from msolift.otxx.orders import compatible_orders
from msolift.otxx.replace import sub_otxx
from msolift.types.classes import all_structures
from msolift.types.registry import TypeId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoClasses:
    classes: tuple[frozenset[TypeId], ...]
    universe_cap: int
    structures_checked: int

    def class_of(self, theta: TypeId) -> Optional[frozenset[TypeId]]:
        for members in self.classes:
            if theta in members:
                return members
        return None


@dataclass(frozen=True)
class Agreement:
    agree: bool
    compared: int
    co_classes: tuple[frozenset[TypeId], ...]
    order_invariant_classes: tuple[frozenset[TypeId], ...]


def realized_types(X: Otxx, engine: CompositionEngine) -> frozenset[TypeId]:
    """Anchored types of X under every compatible order."""
    return frozenset(engine.anchored_type(X, order) for order in compatible_orders(X))


def compatible_cover(X: Otxx, t: int, q: int, engine: Optional[CompositionEngine] = None) -> CompatibleCover:
    """Child u of t ↦ the anchored types realized by the compatible orders of sub_otxx(X, u)."""
    engine = engine or default_engine(q)
    return {u: realized_types(sub_otxx(X, u), engine) for u in X.tree.children[t]}


def default_corpus(max_vertices: int = 3, k: int = 2) -> Iterable[Otxx]:
    """Every sub-otxx of the otxxs of graphs on up to max_vertices vertices with treewidth at most k."""
    for n in range(1, max_vertices + 1):
        for G in all_structures(GRAPH_VOCABULARY, n):
            X, _ = otxx_of(G, k)
            for t in sorted(X.nodes):
                yield sub_otxx(X, t)


def co_classes(
    q: int,
    universe_cap: int,
    corpus: Optional[Iterable[Otxx]] = None,
    engine: Optional[CompositionEngine] = None,
) -> CoClasses:
    """
    ≡_co on the anchored types realized within the corpus: two types are
    joined when one sub-otxx realizes both under compatible orders.

    Sub-otxxs above universe_cap are skipped. Raises CapacityError when a
    sub-otxx has more compatible orders than the extension cap.
    """
    engine = engine or default_engine(q)
    corpus = default_corpus() if corpus is None else corpus
    uf = UnionFind()
    checked = 0
    for X in corpus:
        if len(X.universe) > universe_cap:
            continue
        checked += 1
        realized = sorted(realized_types(X, engine))
        for theta in realized:
            uf.union(realized[0], theta)
    classes = tuple(uf.classes())
    logger.debug("✓ %d compatible-order classes from %d sub-otxxs", len(classes), checked)
    return CoClasses(classes, universe_cap, checked)


def relation_agreement(
    q: int,
    universe_cap: int,
    corpus: Optional[Iterable[Otxx]] = None,
    engine: Optional[CompositionEngine] = None,
) -> Agreement:
    """
    Compare ≡_co with the classes obtained by joining the types of all linear
    orders of each sub-otxx, restricted to types realized by compatible
    orders. The result is reported, not enforced.

    Raises CapacityError when a sub-otxx exceeds the order cap.
    """
    engine = engine or default_engine(q)
    corpus = list(default_corpus() if corpus is None else corpus)
    order_cap = get_settings().order_cap
    co = UnionFind()
    invariant = UnionFind()
    for X in corpus:
        if len(X.universe) > universe_cap:
            continue
        if len(X.universe) > order_cap:
            raise CapacityError(f"{len(X.universe)}! orders exceed the order cap {order_cap}", order_cap)
        realized = sorted(realized_types(X, engine))
        for theta in realized:
            co.union(realized[0], theta)
        every = sorted({engine.anchored_type(X, order) for order in permutations(sorted(X.universe))})
        for theta in every:
            invariant.union(every[0], theta)

    compatible = set(co.parent)
    restricted: dict[TypeId, set[TypeId]] = {}
    for theta in compatible:
        restricted.setdefault(invariant.find(theta), set()).add(theta)
    oi_classes = tuple(sorted((frozenset(g) for g in restricted.values()), key=min))
    co_result = tuple(co.classes())
    agree = set(co_result) == set(oi_classes)
    if agree:
        logger.info("✓ compatible-order classes agree with order-invariant classes on %d types", len(compatible))
    else:
        logger.info("✗ compatible-order classes differ from order-invariant classes on %d types", len(compatible))
    return Agreement(agree, len(compatible), co_result, oi_classes)
