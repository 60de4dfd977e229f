from typing import List, Optional

from pydantic import BaseModel, Field

from msolift.types.models import TypeDescription


class TypecheckReport(BaseModel):
    type_id: int
    description: TypeDescription
    satisfies: Optional[bool] = None


class EquivResult(BaseModel):
    equivalent: bool
    separating_sentence: Optional[str] = None


class InvarianceReport(BaseModel):
    invariant: bool
    orders_checked: int
    counterexample: List[List[int]] = Field(default_factory=list)
