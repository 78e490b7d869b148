from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from ..emission import EmissionServices, RiskQuery
from ..filtering import FilterState, FilterTrace
from ..length_prior import LengthPrior
from ..masked_linalg import ObservationMask
from ..shared import ContractError, NumericalError, Stream, generator
from .domain import (
    MarginalReport,
    Segmentation,
    SegmentSummary,
    argmax_smallest,
    predecessor_kernel,
)

logger = logging.getLogger(__name__)


class PosteriorServices:
    """Backward passes over a filter trace."""

    def __init__(self, prior: LengthPrior, emission: EmissionServices):
        self.prior = prior
        self.emission = emission

    def _check(self, trace: FilterTrace) -> int:
        if trace.n == 0:
            raise ContractError("The filter trace is empty")
        return trace.n

    def _kernels(self, trace: FilterTrace) -> dict[int, dict[int, float]]:
        return {
            j: predecessor_kernel(self.prior, trace.probabilities(j - 1), j)
            for j in range(2, trace.n + 1)
        }

    def map_segmentation(self, trace: FilterTrace) -> Segmentation:
        """Greedy backward argmax chain, starting from the mode of p_n.

        This is not necessarily the jointly most probable segmentation.
        """
        n = self._check(trace)
        j = argmax_smallest(trace.probabilities(n))
        changepoints = [j]
        while j > 1:
            j = argmax_smallest(predecessor_kernel(self.prior, trace.probabilities(j - 1), j))
            changepoints.append(j)
        return Segmentation(n=n, changepoints=tuple(reversed(changepoints)))

    def sample_segmentations(
        self, trace: FilterTrace, seed: int, count: int
    ) -> list[Segmentation]:
        """Independent draws from the segmentation posterior, reproducible by seed."""
        n = self._check(trace)
        if count < 1:
            raise ContractError(f"count must be >= 1, got {count}")
        rng = generator(seed, Stream.POSTERIOR_SAMPLING)
        is_changepoint = np.zeros((count, n + 1), dtype=bool)
        heads = self._draw(trace.probabilities(n), rng.random(count))
        is_changepoint[np.arange(count), heads] = True
        kernels = self._kernels(trace)
        for j in range(n, 1, -1):
            uniforms = rng.random(count)
            at_j = heads == j
            if at_j.any():
                heads[at_j] = self._draw(kernels[j], uniforms[at_j])
                is_changepoint[at_j, heads[at_j]] = True
        return [
            Segmentation(n=n, changepoints=tuple(int(t) for t in np.flatnonzero(row)))
            for row in is_changepoint
        ]

    @staticmethod
    def _draw(probabilities: dict[int, float], uniforms: np.ndarray) -> np.ndarray:
        keys = np.array(sorted(probabilities))
        cumulative = np.cumsum([probabilities[k] for k in keys])
        positions = np.searchsorted(cumulative, uniforms * cumulative[-1], side="right")
        return keys[np.minimum(positions, keys.size - 1)]

    def sample_segmentation(self, trace: FilterTrace, seed: int) -> Segmentation:
        return self.sample_segmentations(trace, seed, 1)[0]

    def marginal_changepoint_probabilities(self, trace: FilterTrace) -> MarginalReport:
        n = self._check(trace)
        last = trace.probabilities(n)
        marginal = dict.fromkeys(range(1, n + 1), 0.0)
        marginal.update(last)
        for j in range(n, 1, -1):
            mass = marginal[j]
            if mass <= 0:
                continue
            for i, k in predecessor_kernel(self.prior, trace.probabilities(j - 1), j).items():
                marginal[i] += mass * k
        return MarginalReport(
            n=n,
            changepoint_probabilities={
                t: min(max(marginal[t], 0.0), 1.0) for t in range(2, n + 1)
            },
            last_changepoint=last,
        )

    def last_segment_risk(self, state: FilterState, query: RiskQuery) -> float:
        """P(v' mu <= theta | y_1:n) for the parameter of the current segment."""
        if not state.particles:
            raise ContractError("Risk needs at least one observation")
        total = math.fsum(
            math.exp(
                particle.log_weight
                + self.emission.risk_log_probability(particle.stats, query)
            )
            for particle in state.particles
        )
        return min(max(total, 0.0), 1.0)

    def segment_summaries(
        self,
        segmentation: Segmentation,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> list[SegmentSummary]:
        """Per-segment posterior mean, fitted signal and E[sigma2 | y]."""
        summaries = []
        for start, end in segmentation.segments:
            stats = self.emission.empty_stats()
            for t in range(start, end + 1):
                stats = self.emission.accumulate(stats, ys[t - 1], masks[t - 1], t)
            posterior = self.emission.posterior(stats)
            try:
                sigma2_mean: float | None = posterior.sigma2_mean()
            except NumericalError:
                sigma2_mean = None
            summaries.append(
                SegmentSummary(
                    start=start,
                    end=end,
                    mu_hat=tuple(float(x) for x in posterior.mu_hat),
                    fitted=tuple(float(x) for x in self.emission.fitted_mean(posterior)),
                    sigma2_mean=sigma2_mean,
                )
            )
        return summaries
