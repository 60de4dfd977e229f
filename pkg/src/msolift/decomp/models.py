from typing import List, Tuple

from pydantic import BaseModel, Field


class ImproveResult(BaseModel):
    """Edges added by one improvement round (or by the closure)."""

    k: int
    added: List[Tuple[int, int]] = Field(default_factory=list)


class OracleResult(BaseModel):
    oracle: str
    value: int
