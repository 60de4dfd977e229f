import logging
import random
from typing import Iterator, Mapping, Optional, Sequence

from msolift.config import get_settings
from msolift.core.decomposition import NodeKind
from msolift.core.structures import Structure
from msolift.errors import CapacityError, DomainError
from msolift.otxx.build import Otxx

logger = logging.getLogger(__name__)


def _strict_predecessors(X: Otxx) -> dict[int, set[int]]:
    universe = sorted(X.universe)
    return {y: {x for x in universe if x != y and X.precedes(x, y)} for y in universe}


def _extensions(X: Otxx) -> Iterator[tuple[int, ...]]:
    before = _strict_predecessors(X)
    after: dict[int, list[int]] = {x: [] for x in before}
    for y, xs in before.items():
        for x in xs:
            after[x].append(y)
    pending = {y: len(xs) for y, xs in before.items()}
    prefix: list[int] = []

    def walk():
        if len(prefix) == len(pending):
            yield tuple(prefix)
            return
        for x in sorted(x for x, n in pending.items() if n == 0 and x not in placed):
            placed.add(x)
            prefix.append(x)
            for y in after[x]:
                pending[y] -= 1
            yield from walk()
            for y in after[x]:
                pending[y] += 1
            prefix.pop()
            placed.discard(x)

    placed: set[int] = set()
    yield from walk()


def any_compatible_order(X: Otxx) -> tuple[int, ...]:
    """The extension that always takes the smallest id among the minimal elements."""
    return next(_extensions(X))


def compatible_orders(X: Otxx, mode: str = "enumerate", cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """
    Linear orders of X's universe extending ⪯: one ("any") or all ("enumerate").

    Raises CapacityError when enumeration exceeds the extension cap.
    """
    if mode == "any":
        return [any_compatible_order(X)]
    if mode != "enumerate":
        raise DomainError(f"Unknown mode {mode!r}")
    cap = get_settings().extension_cap if cap is None else cap
    found = []
    for order in _extensions(X):
        found.append(order)
        if len(found) > cap:
            raise CapacityError(f"More than {cap} compatible orders", cap)
    logger.debug("→ %d compatible orders", len(found))
    return found


def is_compatible(X: Otxx, order: Sequence[int]) -> bool:
    order = tuple(order)
    if len(order) != len(X.universe) or set(order) != X.universe:
        return False
    position = {x: i for i, x in enumerate(order)}
    return all(position[x] < position[y] for y, xs in _strict_predecessors(X).items() for x in xs)


def _check_sequences(X: Otxx, sequences: Mapping[int, Sequence[int]]) -> dict[int, tuple[int, ...]]:
    checked = {}
    for t in X.nodes:
        if X.tree.kind(t) == NodeKind.B_NODE:
            checked[t] = X.sibling_sequence(t)
            continue
        seq = tuple(sequences.get(t, X.tree.children[t]))
        if sorted(seq) != sorted(X.tree.children[t]) or len(set(seq)) != len(seq):
            raise DomainError(f"Sequence {seq} is not an ordering of the children of a-node {t}")
        checked[t] = seq
    return checked


def block_order(X: Otxx, sequences: Optional[Mapping[int, Sequence[int]]] = None) -> tuple[int, ...]:
    """
    The compatible order that keeps every subtree contiguous.

    Nodes come first: each node before its children's blocks, children of
    b-nodes in sibling order and children of a-nodes by `sequences` (default
    by id). Then the root separator, then for every node in the same
    preorder the bag elements it introduces, in bag order.
    """
    seqs = _check_sequences(X, sequences or {})
    nodes: list[int] = []
    stack = [X.root]
    while stack:
        t = stack.pop()
        nodes.append(t)
        stack.extend(reversed(seqs[t]))
    fresh: list[int] = []
    for t in nodes:
        fresh.extend(v for v in X.bag_orders[t] if v not in X.sigma[t])
    return tuple(nodes) + X.root_separator + tuple(fresh)


def sequences_of(X: Otxx, order: Sequence[int]) -> dict[int, tuple[int, ...]]:
    """Children of every node sorted by their position in `order`."""
    position = {x: i for i, x in enumerate(order)}
    return {t: tuple(sorted(X.tree.children[t], key=position.__getitem__)) for t in X.nodes}


def blockify(X: Otxx, order: Sequence[int]) -> tuple[int, ...]:
    """The block order with the same child sequences as a compatible order."""
    if not is_compatible(X, order):
        raise DomainError("Order is not compatible with ⪯")
    return block_order(X, sequences_of(X, order))


def random_block_order(X: Otxx, rng: random.Random) -> tuple[int, ...]:
    sequences = {}
    for t in sorted(X.nodes):
        if X.tree.kind(t) == NodeKind.A_NODE:
            children = list(X.tree.children[t])
            rng.shuffle(children)
            sequences[t] = tuple(children)
    return block_order(X, sequences)


def canonical_form(X: Otxx, sequences: Optional[Mapping[int, Sequence[int]]] = None) -> Structure:
    """X's structure relabelled by positions in its block order."""
    order = block_order(X, sequences)
    return X.structure.relabel({x: i for i, x in enumerate(order)})


def random_compatible_order(X: Otxx, rng: random.Random) -> tuple[int, ...]:
    """A linear extension of ⪯ built by drawing a random minimal element at every step."""
    before = _strict_predecessors(X)
    pending = {y: len(xs) for y, xs in before.items()}
    after: dict[int, list[int]] = {x: [] for x in before}
    for y, xs in before.items():
        for x in xs:
            after[x].append(y)
    ready = sorted(x for x, n in pending.items() if n == 0)
    order = []
    while ready:
        x = ready.pop(rng.randrange(len(ready)))
        order.append(x)
        for y in after[x]:
            pending[y] -= 1
            if pending[y] == 0:
                ready.append(y)
    return tuple(order)
