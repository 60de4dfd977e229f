from msolift.types.classes import OrderInvariantClass, oi_type_class
from msolift.types.engine import cmso_type, describe, equiv, mso_type, with_order
from msolift.types.registry import Realization, TypeId, TypeMeta, TypeRegistry, default_registry
from msolift.types.semantics import holds, satisfies
from msolift.types.witness import separating_sentence

__all__ = [
    "OrderInvariantClass",
    "Realization",
    "TypeId",
    "TypeMeta",
    "TypeRegistry",
    "cmso_type",
    "default_registry",
    "describe",
    "equiv",
    "holds",
    "mso_type",
    "oi_type_class",
    "satisfies",
    "separating_sentence",
    "with_order",
]
