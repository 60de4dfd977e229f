from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class TraceRecord(BaseModel):
    """One composed node of the bottom-up pass; ids are profile ids of the lift engine."""

    node: int
    kind: str
    local_key: str
    partition: Dict[int, int] = Field(default_factory=dict)
    sequence: List[int] = Field(default_factory=list)
    type_id: int
    memo_hit: bool = False

    class Config:
        extra = "forbid"


class EngineStatsModel(BaseModel):
    hits: int = 0
    misses: int = 0
    profiles: int = 0
    largest_local: int = 0


class LiftResult(BaseModel):
    verdict: bool
    theta_root: Optional[int] = None
    root_profile: int
    scope: str
    q: int
    c: int
    treewidth: int
    order: List[int]
    composed_order: List[int]
    invariance_checked: bool
    trace: Optional[List[TraceRecord]] = None
    stats: EngineStatsModel = Field(default_factory=EngineStatsModel)
