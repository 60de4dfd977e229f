from typing import Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError

from msolift.core.decomposition import SegmentedDecomposition
from msolift.core.formats import (
    decomposition_from_model,
    decomposition_to_model,
    structure_from_model,
    structure_to_model,
)
from msolift.core.models import DecompositionModel, StructureModel
from msolift.errors import DomainError
from msolift.otxx.build import Otxx


class OtxxModel(BaseModel):
    """Otxx wire form; `derived` is the merged structure and is checked against a rebuild when present."""

    base: StructureModel
    tree: DecompositionModel
    bag_orders: Dict[int, List[int]]
    k: int
    root_separator: List[int] = Field(default_factory=list)
    derived: Optional[StructureModel] = None


def otxx_to_model(X: Otxx, derived: bool = True) -> OtxxModel:
    return OtxxModel(
        base=structure_to_model(X.base),
        tree=decomposition_to_model(X.tree),
        bag_orders={t: list(X.bag_orders[t]) for t in sorted(X.nodes)},
        k=X.k,
        root_separator=list(X.root_separator),
        derived=structure_to_model(X.structure) if derived else None,
    )


def otxx_from_model(model: OtxxModel) -> Otxx:
    """Raises DomainError when the parts are inconsistent or the derived structure disagrees."""
    X = Otxx(
        base=structure_from_model(model.base),
        tree=SegmentedDecomposition.of(decomposition_from_model(model.tree)),
        bag_orders={t: tuple(o) for t, o in model.bag_orders.items()},
        k=model.k,
        root_separator=tuple(model.root_separator),
    )
    if model.derived is not None:
        given = structure_from_model(model.derived, internal=True)
        rebuilt = X.structure
        if given.universe != rebuilt.universe or given.relations != rebuilt.relations:
            raise DomainError("Derived relations do not match the rebuilt otxx")
    return X


def dumps_otxx(X: Otxx, derived: bool = True) -> str:
    return otxx_to_model(X, derived).model_dump_json(indent=2)


def loads_otxx(text: str) -> Otxx:
    try:
        model = OtxxModel.model_validate_json(text)
    except ValidationError as e:
        raise DomainError(f"Invalid otxx JSON: {e}") from e
    return otxx_from_model(model)
