from __future__ import annotations

import logging

import numpy as np

from ..emission import EmissionConfig
from ..length_prior import LengthPrior
from ..shared import ContractError, Stream, generator
from .domain import GroundTruth, SegmentTruth
from .schemas import SimulationConfig

logger = logging.getLogger(__name__)


class SimulationServices:
    """Draws series from the hierarchical model the detector assumes."""

    def __init__(
        self,
        prior: LengthPrior,
        emission: EmissionConfig,
        config: SimulationConfig | None = None,
    ):
        self.prior = prior
        self.emission = emission
        self.config = config or SimulationConfig()

    def sample_changepoints(self, n: int, rng: np.random.Generator) -> tuple[int, ...]:
        """Renewal process started in its stationary regime: first gap from g0."""
        changepoints = [1]
        position = 1 + self.prior.sample_length(rng, first_segment=True)
        while position <= n:
            changepoints.append(position)
            position += self.prior.sample_length(rng, first_segment=False)
        return tuple(changepoints)

    def _sigma2(self, rng: np.random.Generator) -> float:
        config = self.emission
        if config.noise == "fixed":
            assert config.sigma2 is not None
            return config.sigma2
        assert config.nu is not None and config.gamma is not None
        return 1.0 / rng.gamma(0.5 * config.nu, 2.0 / config.gamma)

    def _activation(self) -> np.ndarray:
        d = self.emission.d
        probability = np.asarray(self.config.activation_prob, dtype=float)
        if probability.ndim == 0:
            return np.full(d, float(probability))
        if probability.shape != (d,):
            raise ContractError(f"activation_prob needs 1 or {d} values")
        return probability

    def simulate(self, n: int, seed: int) -> tuple[np.ndarray, GroundTruth]:
        """An n x d array with NaN for unobserved cells, plus the planted truth."""
        if n < 1:
            raise ContractError(f"n must be >= 1, got {n}")
        config = self.emission
        changepoints = self.sample_changepoints(n, generator(seed, Stream.SEGMENTATION))
        parameters = generator(seed, Stream.PARAMETERS)
        noise = generator(seed, Stream.NOISE)
        masks = generator(seed, Stream.MASKS)

        noise_factor = np.linalg.cholesky(config.covariance.sigma0)
        prior_sd = np.sqrt(config.prior_scales)
        ys = np.empty((n, config.d))
        segments = []
        ends = [cp - 1 for cp in changepoints[1:]] + [n]
        for start, end in zip(changepoints, ends):
            sigma2 = self._sigma2(parameters)
            mu = prior_sd * np.sqrt(sigma2) * parameters.standard_normal(prior_sd.size)
            z = noise.standard_normal((end - start + 1, config.d))
            ys[start - 1 : end] = config.h0 @ mu + np.sqrt(sigma2) * z @ noise_factor.T
            segments.append(
                SegmentTruth(
                    start=start,
                    end=end,
                    mu=tuple(float(x) for x in mu),
                    sigma2=float(sigma2),
                )
            )
        observed = masks.random((n, config.d)) < self._activation()
        ys[~observed] = np.nan
        logger.info(
            "Simulated %d dates with %d changepoints (seed %d)",
            n,
            len(changepoints) - 1,
            seed,
        )
        return ys, GroundTruth(
            seed=seed, n=n, changepoints=changepoints, segments=tuple(segments)
        )
