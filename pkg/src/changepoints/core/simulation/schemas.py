from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class SimulationConfig(BaseModel):
    """The ``simulate.*`` keys."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    activation_prob: float | tuple[float, ...] = Field(
        default=1.0, description="Probability each component is observed, scalar or per component."
    )

    @field_validator("activation_prob")
    @classmethod
    def validate_probability(
        cls, value: float | tuple[float, ...]
    ) -> float | tuple[float, ...]:
        values = value if isinstance(value, tuple) else (value,)
        if not all(0.0 <= v <= 1.0 for v in values):
            raise ValueError("activation probabilities must lie in [0, 1]")
        return value
