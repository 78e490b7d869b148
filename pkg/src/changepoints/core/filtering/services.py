from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from ..emission import EmissionServices
from ..length_prior import LengthPrior
from ..masked_linalg import ObservationMask
from ..numerics import log_sum_exp, safe_log
from ..shared import ContractError, NumericalError
from .domain import FilterState, FilterTrace, Particle, PruneRecord
from .schemas import FilterConfig

logger = logging.getLogger(__name__)

# Dropped mass above this is worth a warning rather than a debug line.
DROPPED_MASS_WARNING = 1e-6


class FilterServices:
    """Forward recursion on the predecessor changepoint, with pruning."""

    def __init__(
        self,
        prior: LengthPrior,
        emission: EmissionServices,
        config: FilterConfig | None = None,
    ):
        self.prior = prior
        self.emission = emission
        self.config = config or FilterConfig()

    def init(self) -> FilterState:
        return FilterState()

    def step(
        self, state: FilterState, y_t: np.ndarray, mask: ObservationMask
    ) -> FilterState:
        """Absorb the observation at t = state.t + 1 and renormalize."""
        t = state.t + 1
        increment = self.emission.increment(np.asarray(y_t, dtype=float), mask, t)

        changepoints: list[int] = []
        unnormalized: list[float] = []
        extended: list[tuple] = []
        change_terms: list[float] = []
        for particle in state.particles:
            hazard = self.prior.hazard(
                t - particle.changepoint, first_segment=particle.changepoint == 1
            )
            change_terms.append(particle.log_weight + safe_log(hazard.change))
            if hazard.stay == 0.0:
                continue
            stats = particle.stats.extend(increment)
            log_likelihood = (
                particle.log_likelihood
                if increment.is_empty
                else self.emission.log_marginal_likelihood(stats)
            )
            changepoints.append(particle.changepoint)
            unnormalized.append(
                particle.log_weight
                + math.log(hazard.stay)
                + log_likelihood
                - particle.log_likelihood
            )
            extended.append((stats, log_likelihood))

        fresh = self.emission.empty_stats().extend(increment)
        fresh_likelihood = self.emission.log_marginal_likelihood(fresh)
        changepoints.append(t)
        unnormalized.append(
            fresh_likelihood + (log_sum_exp(change_terms) if change_terms else 0.0)
        )
        extended.append((fresh, fresh_likelihood))

        normalizer = log_sum_exp(unnormalized)
        if math.isinf(normalizer):
            raise NumericalError(f"Zero predictive probability at t={t}")
        particles = tuple(
            Particle.model_construct(
                changepoint=j,
                log_weight=weight - normalizer,
                stats=stats,
                log_likelihood=log_likelihood,
            )
            for j, weight, (stats, log_likelihood) in zip(
                changepoints, unnormalized, extended
            )
            if weight > -math.inf
        )
        logger.debug(
            "t=%d: %d particles, log predictive %.6g", t, len(particles), normalizer
        )
        return FilterState.model_construct(
            t=t,
            particles=particles,
            log_evidence=state.log_evidence + normalizer,
            pruned=state.pruned,
        )

    def prune(
        self,
        state: FilterState,
        max_particles: int | None = None,
        min_log_weight: float | None = None,
    ) -> FilterState:
        """Threshold, then keep the top K by weight; the newest particle always survives.

        Ties on weight keep the earlier changepoint. Survivors are renormalized
        and the dropped changepoints are recorded on the state.
        """
        if max_particles is None and min_log_weight is None:
            max_particles = self.config.max_particles
            min_log_weight = self.config.min_log_weight
        if max_particles is not None and max_particles < 2:
            raise ContractError(f"max_particles must be >= 2, got {max_particles}")
        threshold = -math.inf if min_log_weight is None else min_log_weight

        newest = [p for p in state.particles if p.changepoint == state.t]
        candidates = [
            p
            for p in state.particles
            if p.changepoint != state.t and p.log_weight >= threshold
        ]
        if max_particles is not None:
            candidates.sort(key=lambda p: (-p.log_weight, p.changepoint))
            candidates = candidates[: max_particles - len(newest)]
        kept = sorted(candidates + newest, key=lambda p: p.changepoint)
        if len(kept) == len(state.particles):
            return state

        survivors = {p.changepoint for p in kept}
        dropped = [p for p in state.particles if p.changepoint not in survivors]
        dropped_mass = math.exp(log_sum_exp([p.log_weight for p in dropped]))
        level = logging.WARNING if dropped_mass > DROPPED_MASS_WARNING else logging.DEBUG
        logger.log(
            level,
            "t=%d: pruned %d particles carrying mass %.3g",
            state.t,
            len(dropped),
            dropped_mass,
        )
        normalizer = log_sum_exp([p.log_weight for p in kept])
        return FilterState.model_construct(
            t=state.t,
            particles=tuple(
                p.model_copy(update={"log_weight": p.log_weight - normalizer})
                for p in kept
            ),
            log_evidence=state.log_evidence,
            pruned=state.pruned
            + (
                PruneRecord(
                    t=state.t,
                    dropped=tuple(p.changepoint for p in dropped),
                    dropped_mass=dropped_mass,
                ),
            ),
        )

    def last_changepoint_distribution(self, state: FilterState) -> dict[int, float]:
        """p_t as changepoint -> probability; empty before any observation."""
        return {p.changepoint: math.exp(p.log_weight) for p in state.particles}

    def advance(
        self, state: FilterState, y_t: np.ndarray, mask: ObservationMask
    ) -> FilterState:
        """One online update: step, then prune per the configuration."""
        state = self.step(state, y_t, mask)
        if self.config.is_exact:
            return state
        return self.prune(state)

    def run(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Iterable[ObservationMask],
    ) -> tuple[FilterState, FilterTrace]:
        state = self.init()
        trace = FilterTrace()
        for y_t, mask in zip(ys, masks, strict=True):
            state = self.advance(state, y_t, mask)
            trace.record(state)
        logger.info(
            "Filtered %d dates, %d particles kept, log evidence %.6f",
            state.t,
            len(state.particles),
            state.log_evidence,
        )
        return state, trace
