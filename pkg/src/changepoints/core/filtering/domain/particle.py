from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ...masked_linalg import SegmentStats
from ...numerics import LogProb


class Particle(BaseModel):
    """Hypothesis "the last changepoint so far is ``changepoint``"."""

    model_config = ConfigDict(frozen=True)

    changepoint: int = Field(ge=1)
    log_weight: LogProb
    stats: SegmentStats
    log_likelihood: LogProb = Field(
        default=0.0, description="Cached log P(changepoint, t) of ``stats``."
    )


class PruneRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: int
    dropped: tuple[int, ...]
    dropped_mass: float


class FilterState(BaseModel):
    """Posterior of the predecessor changepoint after ``t`` observations.

    Particles are stored by increasing changepoint with normalized
    log-weights; the state at t = 0 has none.
    """

    model_config = ConfigDict(frozen=True)

    t: int = Field(default=0, ge=0)
    particles: tuple[Particle, ...] = ()
    log_evidence: LogProb = 0.0
    pruned: tuple[PruneRecord, ...] = ()

    @property
    def changepoints(self) -> tuple[int, ...]:
        return tuple(particle.changepoint for particle in self.particles)

    @property
    def log_weights(self) -> tuple[float, ...]:
        return tuple(particle.log_weight for particle in self.particles)
