from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..emission import EmissionConfig, RiskQuery
from ..filtering import FilterConfig
from ..length_prior import PriorConfig
from ..simulation import SimulationConfig


class RunConfig(BaseModel):
    """A whole run configuration, validated before any computation."""

    model_config = ConfigDict(extra="forbid")

    prior: PriorConfig = Field(default_factory=PriorConfig)
    model: EmissionConfig
    filter: FilterConfig = Field(default_factory=FilterConfig)
    risk: RiskQuery | None = None
    simulate: SimulationConfig = Field(default_factory=SimulationConfig)
    seed: int = Field(default=0, ge=0, lt=2**64)


class DetectionConfigurations(BaseModel):
    model_config = ConfigDict(from_attributes=True)

    WORKERS: int
    PRIOR_HORIZON: int
    TRACE_FILENAME: str
