from __future__ import annotations

import math
from collections.abc import Iterable, Iterator

from pydantic import BaseModel, ConfigDict, Field

from ...shared import ContractError
from .particle import FilterState, PruneRecord


class TraceStep(BaseModel):
    """One line of ``trace.jsonl``: the particles the filter kept at ``t``."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    t: int = Field(ge=1)
    particles: tuple[tuple[int, float], ...]
    pruned: PruneRecord | None = None

    def probabilities(self) -> dict[int, float]:
        return {j: math.exp(log_weight) for j, log_weight in self.particles}


class FilterTrace(BaseModel):
    """Snapshots of p_t for t = 1..n, recorded after pruning."""

    model_config = ConfigDict(ser_json_inf_nan="constants")

    steps: list[TraceStep] = Field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.steps)

    def record(self, state: FilterState) -> None:
        if state.t != self.n + 1:
            raise ContractError(f"Trace holds {self.n} steps, cannot record t={state.t}")
        latest = state.pruned[-1] if state.pruned and state.pruned[-1].t == state.t else None
        self.steps.append(
            TraceStep(
                t=state.t,
                particles=tuple(
                    (particle.changepoint, particle.log_weight)
                    for particle in state.particles
                ),
                pruned=latest,
            )
        )

    def at(self, t: int) -> TraceStep:
        if not 1 <= t <= self.n:
            raise ContractError(f"No snapshot for t={t} in a trace of {self.n} steps")
        return self.steps[t - 1]

    def probabilities(self, t: int) -> dict[int, float]:
        """p_t as changepoint -> probability; missing entries are 0."""
        return self.at(t).probabilities()

    @property
    def prune_records(self) -> list[PruneRecord]:
        return [step.pruned for step in self.steps if step.pruned is not None]

    def to_jsonl(self) -> Iterator[str]:
        for step in self.steps:
            yield step.model_dump_json(exclude_none=True)

    @classmethod
    def from_jsonl(cls, lines: Iterable[str]) -> FilterTrace:
        return cls(
            steps=[TraceStep.model_validate_json(line) for line in lines if line.strip()]
        )
