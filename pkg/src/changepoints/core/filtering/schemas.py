from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator

DEFAULT_MAX_PARTICLES = 256
DEFAULT_MIN_LOG_WEIGHT = math.log(1e-10)


class FilterConfig(BaseModel):
    """The ``filter.*`` keys. ``max_particles=None`` means no cap."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    max_particles: int | None = Field(default=DEFAULT_MAX_PARTICLES, ge=2)
    min_log_weight: float = Field(default=DEFAULT_MIN_LOG_WEIGHT, le=0)

    @field_validator("max_particles", mode="before")
    @classmethod
    def parse_unbounded(cls, value: object) -> object:
        if isinstance(value, str) and value.strip().lower() in {"inf", "infinity", "none"}:
            return None
        if isinstance(value, float) and math.isinf(value) and value > 0:
            return None
        return value

    @classmethod
    def exact(cls) -> FilterConfig:
        """No pruning at all: the recursion is exact."""
        return cls(max_particles=None, min_log_weight=-math.inf)

    @property
    def is_exact(self) -> bool:
        return self.max_particles is None and math.isinf(self.min_log_weight)
