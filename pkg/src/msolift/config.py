import logging
import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from msolift.errors import ConfigError

ENV_PREFIX = "MSOLIFT_"

logger = logging.getLogger(__name__)


class Settings(BaseModel):
    """Caps and worker settings. Every field maps to MSOLIFT_<FIELD> in the environment."""

    rank_cap: int = Field(default=3, ge=0)
    universe_cap: int = Field(default=10, ge=0)  # q <= 2
    universe_cap_q3: int = Field(default=7, ge=0)
    order_cap: int = Field(default=8, ge=0)
    lift_order_cap: int = Field(default=5, ge=0)
    extension_cap: int = Field(default=10000, ge=1)
    structure_cap: int = Field(default=100000, ge=1)
    lift_rank_cap: int = Field(default=4, ge=0)
    treewidth_oracle_cap: int = Field(default=12, ge=0)
    minor_host_cap: int = Field(default=10, ge=0)
    minor_pattern_cap: int = Field(default=6, ge=0)
    permutation_cap: int = Field(default=720, ge=1)
    jobs: int = Field(default=1, ge=1)
    log_level: str = "WARNING"

    class Config:
        extra = "forbid"

    def universe_cap_for(self, q: int) -> int:
        return self.universe_cap if q <= 2 else self.universe_cap_q3


def load_settings() -> Settings:
    """
    Build Settings from the environment (.env is read first).

    Raises ConfigError when a variable does not validate.
    """
    load_dotenv()
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"Invalid {ENV_PREFIX}* configuration: {e}") from e


_override: Optional[Settings] = None


@lru_cache(maxsize=1)
def _environment_settings() -> Settings:
    settings = load_settings()
    logger.debug("→ settings loaded: %s", settings.model_dump())
    return settings


def get_settings() -> Settings:
    return _override if _override is not None else _environment_settings()


def override_settings(**updates) -> Settings:
    """
    Replace the active settings by a copy with some fields changed.

    Raises ConfigError when an updated value does not validate.
    """
    global _override
    unknown = set(updates) - set(Settings.model_fields)
    if unknown:
        raise ConfigError(f"Unknown settings: {sorted(unknown)}")
    updated = get_settings().model_copy(update=updates)
    try:
        settings = Settings.model_validate(updated.model_dump())
    except ValidationError as e:
        raise ConfigError(f"Invalid setting override: {e}") from e
    _override = settings
    return settings


def reset_settings() -> None:
    """Drop overrides; the environment is read again on the next access."""
    global _override
    _override = None
    _environment_settings.cache_clear()
