from typing import Any, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from msolift.core.formats import structure_from_model, structure_to_model
from msolift.core.models import StructureModel
from msolift.errors import DomainError
from msolift.types.registry import Realization, TypeMeta, TypeRegistry


class RealizationModel(BaseModel):
    structure: StructureModel
    sets: List[List[int]] = Field(default_factory=list)
    order: Optional[List[int]] = None


class TypeEntryModel(BaseModel):
    """One registry entry; payload is the canonical JSON form of the type payload."""

    type_id: int
    q: int
    c: int
    arity: int
    vocabulary: List[Tuple[str, int]]
    payload: Any
    realization: Optional[RealizationModel] = None


class RegistryModel(BaseModel):
    entries: List[TypeEntryModel] = Field(default_factory=list)


class TypeDescription(BaseModel):
    type_id: int
    q: int
    c: int
    arity: int
    ordered: bool
    vocabulary: List[Tuple[str, int]]


def _encode_header(header) -> list:
    vocabulary, c, unary = header
    return [[list(s) for s in vocabulary], c, unary]


def _decode_header(data) -> tuple:
    vocabulary, c, unary = data
    return tuple((str(n), int(a)) for n, a in vocabulary), int(c), int(unary)


def _encode_row(row) -> list:
    bits, single, rel, mods = row
    return [bits, bool(single), rel, mods]


def _decode_row(data) -> tuple:
    bits, single, rel, mods = data
    return int(bits), bool(single), int(rel), int(mods)


def encode_payload(payload: tuple) -> list:
    kind = payload[0]
    if kind == "r0":
        return ["r0", _encode_header(payload[1]), [_encode_row(r) for r in payload[2]]]
    if kind == "r1":
        return [
            "r1",
            _encode_header(payload[1]),
            [_encode_row(r) for r in payload[2]],
            [_encode_row(r) for r in sorted(payload[3])],
        ]
    return ["q", payload[1], sorted(payload[2])]


def decode_payload(data: list) -> tuple:
    kind = data[0]
    if kind == "r0":
        return ("r0", _decode_header(data[1]), tuple(_decode_row(r) for r in data[2]))
    if kind == "r1":
        return (
            "r1",
            _decode_header(data[1]),
            tuple(_decode_row(r) for r in data[2]),
            frozenset(_decode_row(r) for r in data[3]),
        )
    if kind == "q":
        return ("q", int(data[1]), frozenset(int(t) for t in data[2]))
    raise DomainError(f"Unknown payload kind {kind!r}")


def dump_registry(registry: TypeRegistry) -> str:
    entries = []
    for type_id, payload, meta, realization in registry.items():
        entries.append(
            TypeEntryModel(
                type_id=type_id,
                q=meta.q,
                c=meta.c,
                arity=meta.arity,
                vocabulary=list(meta.vocabulary),
                payload=encode_payload(payload),
                realization=None
                if realization is None
                else RealizationModel(
                    structure=structure_to_model(realization.structure),
                    sets=[sorted(P) for P in realization.sets],
                    order=list(realization.order) if realization.order is not None else None,
                ),
            )
        )
    return RegistryModel(entries=entries).model_dump_json(indent=2)


def load_registry(text: str) -> TypeRegistry:
    """Rebuild a registry from dump_registry output; ids are preserved."""
    try:
        model = RegistryModel.model_validate_json(text)
    except ValidationError as e:
        raise DomainError(f"Invalid registry JSON: {e}") from e
    registry = TypeRegistry()
    for entry in sorted(model.entries, key=lambda e: e.type_id):
        meta = TypeMeta(entry.q, entry.c, entry.arity, tuple((n, a) for n, a in entry.vocabulary))
        realization = None
        if entry.realization is not None:
            realization = Realization(
                structure_from_model(entry.realization.structure, internal=True),
                tuple(frozenset(P) for P in entry.realization.sets),
                tuple(entry.realization.order) if entry.realization.order is not None else None,
            )
        type_id = registry.restore(decode_payload(entry.payload), meta, realization)
        if type_id != entry.type_id:
            raise DomainError(f"Registry entries are not dense: expected {entry.type_id}, got {type_id}")
    return registry


def describe_type(type_id: int, registry: TypeRegistry) -> TypeDescription:
    meta = registry.meta(type_id)
    return TypeDescription(
        type_id=type_id,
        q=meta.q,
        c=meta.c,
        arity=meta.arity,
        ordered=meta.ordered,
        vocabulary=list(meta.vocabulary),
    )
