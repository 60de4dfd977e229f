"""
Rank-q MSO / CMSO types by Hintikka recursion over set extensions.

Sets are bitmasks over the sorted universe. The atomic basis for the
set-only fragment: X_i sub X_j, sing(X_i), R(X_i1..X_ir) on singletons
(the order is the relation <=), and C_m(X_i) for 2 <= m <= c, plus
C_m(R) for unary symbols R in the header.

An extension row describes the newest set P_j against P_1..P_{j-1}:
    (subset bits, singleton flag, relation bits, modulo bits)
where bit 2i of the subset bits is P_j sub P_i and bit 2i+1 is P_i sub P_j,
and relation bit k refers to relation_atoms(vocabulary, j)[k].
"""

import logging
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from msolift.config import get_settings
from msolift.core.structures import ORDER_SYMBOL, Structure
from msolift.errors import CapacityError, DomainError
from msolift.types.registry import Realization, TypeId, TypeMeta, TypeRegistry, default_registry

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def relation_atoms(vocabulary: tuple[tuple[str, int], ...], level: int) -> tuple[tuple[str, tuple[int, ...]], ...]:
    """Relation atoms over parameter indices 0..level that mention index `level`."""
    atoms = []
    for name, arity in vocabulary:
        for indices in product(range(level + 1), repeat=arity):
            if level in indices:
                atoms.append((name, indices))
    return tuple(atoms)


def unary_symbols(vocabulary: tuple[tuple[str, int], ...]) -> tuple[str, ...]:
    return tuple(name for name, arity in vocabulary if arity == 1)


def with_order(A: Structure, order: Sequence[int]) -> Structure:
    """A expanded by the reflexive linear order <= listed by `order`."""
    order = tuple(order)
    if len(order) != A.size or set(order) != A.universe:
        raise DomainError("Order is not a linear order of the universe")
    pairs = [(order[i], order[j]) for i in range(len(order)) for j in range(i, len(order))]
    return A.expand({ORDER_SYMBOL: (2, pairs)})


class _TypeComputer:
    def __init__(self, A: Structure, c: int, registry: TypeRegistry):
        self.A = A
        self.c = c
        self.registry = registry
        self.vocabulary = A.vocabulary.symbols
        self.elements = A.elements
        index = {v: i for i, v in enumerate(self.elements)}
        self.relations = {
            name: frozenset(tuple(index[x] for x in t) for t in A.relations[name])
            for name, _ in self.vocabulary
        }
        unary_bits = 0
        bit = 0
        for name in unary_symbols(self.vocabulary):
            size = len(self.relations[name])
            for m in range(2, c + 1):
                if size % m == 0:
                    unary_bits |= 1 << bit
                bit += 1
        self.header = (self.vocabulary, c, unary_bits)

    def ext(self, masks: tuple[int, ...], S: int) -> tuple[int, bool, int, int]:
        bits = 0
        for i, P in enumerate(masks):
            if S & ~P == 0:
                bits |= 1 << (2 * i)
            if P & ~S == 0:
                bits |= 1 << (2 * i + 1)
        single = S != 0 and S & (S - 1) == 0
        rel = self.relation_bits(masks, S) if single else 0
        mods = 0
        if self.c > 1:
            size = S.bit_count()
            for m in range(2, self.c + 1):
                if size % m == 0:
                    mods |= 1 << (m - 2)
        return bits, single, rel, mods

    def relation_bits(self, masks: tuple[int, ...], S: int) -> int:
        points = []
        for P in masks:
            points.append(P.bit_length() - 1 if P and not P & (P - 1) else None)
        points.append(S.bit_length() - 1)
        rel = 0
        for k, (name, indices) in enumerate(relation_atoms(self.vocabulary, len(masks))):
            tup = tuple(points[i] for i in indices)
            if None not in tup and tup in self.relations[name]:
                rel |= 1 << k
        return rel

    def meta(self, q: int, arity: int) -> TypeMeta:
        return TypeMeta(q=q, c=self.c, arity=arity, vocabulary=self.vocabulary)

    def compute(self, masks: tuple[int, ...], exts: tuple, q: int) -> TypeId:
        if q == 0:
            return self.registry.intern(("r0", self.header, exts), self.meta(0, len(masks)))
        full = 1 << len(self.elements)
        if q == 1:
            choices = frozenset(self.ext(masks, S) for S in range(full))
            return self.registry.intern(("r1", self.header, exts, choices), self.meta(1, len(masks)))
        children = set()
        for S in range(full):
            children.add(self.compute(masks + (S,), exts + (self.ext(masks, S),), q - 1))
        return self.registry.intern(("q", q, frozenset(children)), self.meta(q, len(masks)))


def _check_caps(A: Structure, q: int, universe_cap: Optional[int]) -> None:
    settings = get_settings()
    if q > settings.rank_cap:
        raise CapacityError(f"Rank {q} exceeds the rank cap {settings.rank_cap}", settings.rank_cap)
    cap = settings.universe_cap_for(q) if universe_cap is None else universe_cap
    if A.size > cap:
        raise CapacityError(f"Universe of size {A.size} exceeds the cap {cap} at rank {q}", cap)


def cmso_type(
    A: Structure,
    sets: Sequence[frozenset[int]],
    q: int,
    c: int,
    order: Optional[Sequence[int]] = None,
    registry: Optional[TypeRegistry] = None,
    universe_cap: Optional[int] = None,
) -> TypeId:
    """
    tp_(q,c) of (A, P1..Pp), with the order added as a <= relation when given.

    Raises CapacityError above the rank or universe cap.
    """
    if q < 0 or c < 1:
        raise DomainError(f"Invalid rank ({q},{c})")
    registry = registry or default_registry()
    if order is not None:
        A = with_order(A, order)
        order = tuple(order)
    _check_caps(A, q, universe_cap)
    sets = tuple(frozenset(P) for P in sets)
    for P in sets:
        if not P <= A.universe:
            raise DomainError(f"Set {sorted(P)} leaves the universe")

    computer = _TypeComputer(A, c, registry)
    index = {v: i for i, v in enumerate(computer.elements)}
    masks: tuple[int, ...] = ()
    exts: tuple = ()
    for P in sets:
        mask = sum(1 << index[v] for v in P)
        exts += (computer.ext(masks, mask),)
        masks += (mask,)
    type_id = computer.compute(masks, exts, q)
    registry.offer(type_id, Realization(A, sets, order))
    logger.debug("→ type %s of structure with %d elements at rank (%d,%d)", type_id, A.size, q, c)
    return type_id


def mso_type(
    A: Structure,
    sets: Sequence[frozenset[int]] = (),
    q: int = 0,
    order: Optional[Sequence[int]] = None,
    registry: Optional[TypeRegistry] = None,
    universe_cap: Optional[int] = None,
) -> TypeId:
    """tp_q of (A, P1..Pp); plain MSO is CMSO with c = 1."""
    return cmso_type(A, sets, q, 1, order, registry, universe_cap)


def equiv(A: Structure, B: Structure, q: int, registry: Optional[TypeRegistry] = None) -> bool:
    """A ≡_q B, i.e. Duplicator wins the q-move set game."""
    registry = registry or default_registry()
    return mso_type(A, (), q, registry=registry) == mso_type(B, (), q, registry=registry)


def describe(type_id: TypeId, registry: Optional[TypeRegistry] = None) -> TypeMeta:
    return (registry or default_registry()).meta(type_id)
