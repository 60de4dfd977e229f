"""
Hash-consed type registry.

A TypeId is a dense integer handed out in discovery order. Payloads are
canonical nested tuples:

    ("r0", header, exts)          rank 0: atomic diagram of (A, P1..Pp)
    ("r1", header, exts, choices) rank 1: prefix diagram plus the set of
                                  extension rows reachable by one more set
    ("q", q, children)            rank q >= 2: set of rank q-1 TypeIds

header = (vocabulary symbols, c, unary counting bits); each ext row is
(subset bits, singleton flag, relation bits, modulo bits), see engine.py.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Optional

from msolift.core.structures import ORDER_SYMBOL, Structure
from msolift.errors import ContractError

logger = logging.getLogger(__name__)

TypeId = int


@dataclass(frozen=True)
class TypeMeta:
    q: int
    c: int
    arity: int  # number of set parameters
    vocabulary: tuple[tuple[str, int], ...]

    @property
    def ordered(self) -> bool:
        return any(name == ORDER_SYMBOL for name, _ in self.vocabulary)


@dataclass(frozen=True)
class Realization:
    structure: Structure
    sets: tuple[frozenset[int], ...]
    order: Optional[tuple[int, ...]] = None

    @property
    def size(self) -> int:
        return self.structure.size


class TypeRegistry:
    """Append-only map payload -> TypeId with the smallest realization seen per id."""

    def __init__(self):
        self._lock = threading.Lock()
        self._ids: dict[tuple, TypeId] = {}
        self._payloads: list[tuple] = []
        self._meta: list[TypeMeta] = []
        self._realizations: dict[TypeId, Realization] = {}

    def __len__(self) -> int:
        return len(self._payloads)

    def __contains__(self, type_id: object) -> bool:
        return isinstance(type_id, int) and 0 <= type_id < len(self._payloads)

    def intern(self, payload: tuple, meta: TypeMeta) -> TypeId:
        type_id = self._ids.get(payload)
        if type_id is not None:
            return type_id
        with self._lock:
            type_id = self._ids.get(payload)
            if type_id is None:
                type_id = len(self._payloads)
                self._payloads.append(payload)
                self._meta.append(meta)
                self._ids[payload] = type_id
        return type_id

    def payload(self, type_id: TypeId) -> tuple:
        self._check(type_id)
        return self._payloads[type_id]

    def meta(self, type_id: TypeId) -> TypeMeta:
        self._check(type_id)
        return self._meta[type_id]

    def offer(self, type_id: TypeId, realization: Realization) -> None:
        """Keep the realization if it is the smallest seen for type_id."""
        with self._lock:
            current = self._realizations.get(type_id)
            if current is None or realization.size < current.size:
                self._realizations[type_id] = realization

    def realization(self, type_id: TypeId) -> Realization:
        self._check(type_id)
        try:
            return self._realizations[type_id]
        except KeyError:
            raise ContractError(f"Type {type_id} has no stored realization") from None

    def has_realization(self, type_id: TypeId) -> bool:
        return type_id in self._realizations

    def realized(self) -> list[TypeId]:
        return sorted(self._realizations)

    def _check(self, type_id: TypeId) -> None:
        if type_id not in self:
            raise ContractError(f"Unregistered type {type_id}")

    def items(self):
        for type_id, payload in enumerate(self._payloads):
            yield type_id, payload, self._meta[type_id], self._realizations.get(type_id)

    def restore(self, payload: tuple, meta: TypeMeta, realization: Optional[Realization]) -> TypeId:
        type_id = self.intern(payload, meta)
        if realization is not None:
            self.offer(type_id, realization)
        return type_id


_default_registry = TypeRegistry()


def default_registry() -> TypeRegistry:
    return _default_registry
