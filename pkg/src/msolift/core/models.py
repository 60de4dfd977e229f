from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class RelationModel(BaseModel):
    arity: int = Field(..., ge=1)
    tuples: List[List[int]] = Field(default_factory=list)

    class Config:
        extra = "forbid"


class StructureModel(BaseModel):
    """Structure JSON: {"universe": [ids], "relations": {"E": {"arity": 2, "tuples": [[u, v], ...]}}}"""

    universe: List[int]
    relations: Dict[str, RelationModel] = Field(default_factory=dict)

    class Config:
        extra = "forbid"


class DecompositionModel(BaseModel):
    """Decomposition JSON mirroring TreeDecomposition (object keys are node ids)."""

    root: int
    bags: Dict[int, List[int]]
    children: Dict[int, List[int]] = Field(default_factory=dict)
    kinds: Dict[int, str] = Field(default_factory=dict)
    provenance: Dict[int, int] = Field(default_factory=dict)
    attributes: Dict[int, Dict[str, str]] = Field(default_factory=dict)

    class Config:
        extra = "forbid"


class ViolationModel(BaseModel):
    condition: str
    witness: List[int]
    detail: str = ""


class ValidationReportModel(BaseModel):
    ok: bool
    violations: List[ViolationModel] = Field(default_factory=list)


class MetricsModel(BaseModel):
    width: int
    adhesion: int
    empty: bool = False


class DecompositionReport(BaseModel):
    """CLI output of decompose/segment: the decomposition plus its validation."""

    decomposition: DecompositionModel
    validation: ValidationReportModel
    metrics: MetricsModel
    segmented: Optional[bool] = None
