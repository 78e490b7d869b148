from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .domain import LengthPrior


class PriorConfig(BaseModel):
    """The ``prior.*`` keys of a run configuration."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["geometric", "negbin"] = "geometric"
    p: float = Field(default=0.01, gt=0, le=1)
    r: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def validate_r(self) -> PriorConfig:
        if self.kind == "geometric" and self.r != 1:
            raise ValueError("r must be 1 (or omitted) for a geometric prior")
        return self

    def build(self, horizon: int = 64) -> LengthPrior:
        return LengthPrior(kind=self.kind, p=self.p, r=self.r, horizon=horizon)
