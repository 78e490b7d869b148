from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from ..masked_linalg import (
    DateIncrement,
    ObservationMask,
    ObservedFactor,
    SegmentStats,
    date_increment,
    factor_observed_block,
    padded_log_det,
    padded_pseudo_inverse,
)
from ..numerics import (
    LogProb,
    log_gamma,
    normal_log_cdf,
    student_t_log_cdf,
)
from ..shared import ContractError, NumericalError
from .domain import (
    BatchEvaluation,
    LinearTransformLaw,
    SegmentPosterior,
    StackedSegment,
)
from .schemas import EmissionConfig, RiskQuery

logger = logging.getLogger(__name__)

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)
# Relative slack under which a negative quadratic form is rounding noise.
QUADRATIC_TOLERANCE = 1e-12


class _Solved(NamedTuple):
    log_det_m: float
    quadratic: float


class EmissionServices:
    """Conjugate Gaussian segment likelihoods, posteriors and risk laws.

    The fully observed model is the masked model with every flag set; the
    white-noise case (H0 = I, Sigma0 = I) swaps the factorizations for
    diagonal closed forms unless ``fast_path`` is off.
    """

    def __init__(self, config: EmissionConfig, fast_path: bool = True):
        self.config = config
        self.h0 = config.h0
        self.covariance = config.covariance
        self.delta2 = config.prior_scales
        self.prior_precision = np.diag(1.0 / self.delta2)
        self.log_det_prior = float(np.sum(np.log(self.delta2)))
        self.white_noise = fast_path and config.is_white_noise
        self._factors: dict[tuple[bool, ...], ObservedFactor] = {}

    # -- running sums -------------------------------------------------------

    def empty_stats(self) -> SegmentStats:
        return SegmentStats.empty(self.h0.shape[1])

    def factor(self, mask: ObservationMask, t: int | None = None) -> ObservedFactor:
        """Observed-block factor, cached per activation pattern."""
        cached = self._factors.get(mask.flags)
        if cached is None:
            cached = factor_observed_block(self.covariance, mask, t)
            self._factors[mask.flags] = cached
        return cached

    def increment(
        self, y_t: np.ndarray, mask: ObservationMask, t: int | None = None
    ) -> DateIncrement:
        return date_increment(
            y_t, mask, self.h0, self.covariance, t=t, factor=self.factor(mask, t)
        )

    def accumulate(
        self,
        stats: SegmentStats,
        y_t: np.ndarray,
        mask: ObservationMask,
        t: int | None = None,
    ) -> SegmentStats:
        return stats.extend(self.increment(y_t, mask, t))

    # -- conjugate algebra --------------------------------------------------

    def _cholesky(self, stats: SegmentStats) -> np.ndarray:
        try:
            return np.linalg.cholesky(self.prior_precision + stats.a_data)
        except np.linalg.LinAlgError:
            raise NumericalError("D^-1 + A is not positive definite")

    def _clamp(self, c: float, b_m_b: float) -> float:
        quadratic = c - b_m_b
        if quadratic < 0:
            if quadratic < -QUADRATIC_TOLERANCE * max(c, 1.0):
                raise NumericalError(f"Negative quadratic form {quadratic}")
            return 0.0
        return quadratic

    def _solve(self, stats: SegmentStats) -> _Solved:
        if self.white_noise:
            counts = np.diag(stats.a_data)
            m_diag = self.delta2 / (1.0 + counts * self.delta2)
            return _Solved(
                log_det_m=float(np.sum(np.log(m_diag))),
                quadratic=self._clamp(stats.c, float(np.sum(m_diag * stats.b**2))),
            )
        lower = self._cholesky(stats)
        whitened = solve_triangular(lower, stats.b, lower=True)
        return _Solved(
            log_det_m=-2.0 * float(np.sum(np.log(np.diag(lower)))),
            quadratic=self._clamp(stats.c, float(whitened @ whitened)),
        )

    def _log_marginal(
        self, trace_pi: int, log_det_sigma: float, log_det_m: float, quadratic: float
    ) -> LogProb:
        config = self.config
        common = -0.5 * log_det_sigma + 0.5 * (log_det_m - self.log_det_prior)
        if config.noise == "fixed":
            assert config.sigma2 is not None
            return (
                common
                - 0.5 * trace_pi * (LOG_2PI + math.log(config.sigma2))
                - quadratic / (2.0 * config.sigma2)
            )
        assert config.nu is not None and config.gamma is not None
        shape = 0.5 * (trace_pi + config.nu)
        return (
            common
            - 0.5 * trace_pi * LOG_PI
            + log_gamma(shape)
            - log_gamma(0.5 * config.nu)
            + 0.5 * config.nu * math.log(config.gamma)
            - shape * math.log(config.gamma + quadratic)
        )

    def log_marginal_likelihood(self, stats: SegmentStats) -> LogProb:
        """log P(s, s+k-1): the segment's observations with mu, sigma2 integrated out."""
        if stats.is_empty:
            return 0.0
        solved = self._solve(stats)
        return self._log_marginal(
            stats.trace_pi, stats.logdet_sum, solved.log_det_m, solved.quadratic
        )

    def predictive_log_weight(
        self,
        stats_before: SegmentStats,
        y_t: np.ndarray,
        mask: ObservationMask,
        t: int | None = None,
    ) -> tuple[LogProb, SegmentStats]:
        """log P(y_t | segment so far), with the extended statistics."""
        after = self.accumulate(stats_before, y_t, mask, t)
        if after.trace_pi == stats_before.trace_pi:
            return 0.0, after
        weight = self.log_marginal_likelihood(after) - self.log_marginal_likelihood(
            stats_before
        )
        return weight, after

    # -- posterior laws -----------------------------------------------------

    def _prior_posterior(self) -> SegmentPosterior:
        return self._assemble(np.zeros(self.delta2.size), np.diag(self.delta2), 0, 0.0)

    def _assemble(
        self, mu_hat: np.ndarray, m: np.ndarray, trace_pi: int, quadratic: float
    ) -> SegmentPosterior:
        config = self.config
        if config.noise == "fixed":
            return SegmentPosterior(
                mu_hat=mu_hat, M=m, noise="fixed", sigma2=config.sigma2, trace_pi=trace_pi
            )
        assert config.nu is not None and config.gamma is not None
        return SegmentPosterior(
            mu_hat=mu_hat,
            M=m,
            noise="invgamma",
            sigma2_shape=0.5 * (config.nu + trace_pi),
            sigma2_scale=0.5 * (config.gamma + quadratic),
            prior_shape=0.5 * config.nu,
            prior_scale=0.5 * config.gamma,
            trace_pi=trace_pi,
        )

    def posterior(self, stats: SegmentStats) -> SegmentPosterior:
        if stats.is_empty:
            return self._prior_posterior()
        if self.white_noise:
            counts = np.diag(stats.a_data)
            m_diag = self.delta2 / (1.0 + counts * self.delta2)
            # Shrinkage n d2 / (1 + n d2) applied to the mean b / n.
            mu_hat = m_diag * stats.b
            m = np.diag(m_diag)
        else:
            lower = self._cholesky(stats)
            m = cho_solve((lower, True), np.eye(self.delta2.size))
            m = 0.5 * (m + m.T)
            mu_hat = m @ stats.b
        return self._assemble(
            mu_hat, m, stats.trace_pi, self._solve(stats).quadratic
        )

    def fitted_mean(self, posterior: SegmentPosterior) -> np.ndarray:
        """Posterior mean of the signal on the segment, H0 mu_hat."""
        return self.h0 @ posterior.mu_hat

    def _direction(self, query: RiskQuery) -> np.ndarray:
        v = np.asarray(query.v, dtype=float)
        d, q = self.h0.shape
        if query.space == "prediction":
            if v.shape != (d,):
                raise ContractError(f"Prediction-space v must have {d} entries")
            v = self.h0.T @ v
        elif v.shape != (q,):
            raise ContractError(f"Parameter-space v must have {q} entries")
        if not np.any(v):
            raise ContractError("Risk direction is zero in parameter space")
        return v

    def posterior_risk_log_probability(
        self, posterior: SegmentPosterior, query: RiskQuery
    ) -> LogProb:
        """log P(v' mu <= theta | segment) under a given posterior."""
        v = self._direction(query)
        location = float(v @ posterior.mu_hat)
        spread = float(v @ posterior.M @ v)
        if posterior.noise == "fixed":
            assert posterior.sigma2 is not None
            return normal_log_cdf(
                (query.theta - location) / math.sqrt(posterior.sigma2 * spread)
            )
        assert posterior.sigma2_scale is not None and posterior.prior_scale is not None
        if query.variant == "posterior":
            dof = posterior.dof
            scale = math.sqrt(2.0 * posterior.sigma2_scale * spread / dof)
        else:
            assert posterior.prior_shape is not None
            dof = 2.0 * posterior.prior_shape
            scale = math.sqrt(2.0 * posterior.prior_scale * spread / dof)
        return student_t_log_cdf((query.theta - location) / scale, dof)

    def risk_log_probability(self, stats: SegmentStats, query: RiskQuery) -> LogProb:
        return self.posterior_risk_log_probability(self.posterior(stats), query)

    def linear_transform_law(
        self, stats: SegmentStats, a: np.ndarray
    ) -> LinearTransformLaw:
        """Descriptor of the law of A' mu given the segment (no CDF)."""
        a = np.asarray(a, dtype=float)
        if a.ndim == 1:
            a = a[:, None]
        if a.shape[0] != self.delta2.size:
            raise ContractError(f"A must have {self.delta2.size} rows")
        posterior = self.posterior(stats)
        spread = a.T @ posterior.M @ a
        if posterior.noise == "fixed":
            assert posterior.sigma2 is not None
            return LinearTransformLaw(
                mean=a.T @ posterior.mu_hat, scale=posterior.sigma2 * spread, dof=math.inf
            )
        assert posterior.sigma2_scale is not None
        dof = posterior.dof
        return LinearTransformLaw(
            mean=a.T @ posterior.mu_hat,
            scale=2.0 * posterior.sigma2_scale * spread / dof,
            dof=dof,
        )

    # -- stacked evaluator ----------------------------------------------------

    def batch_evaluate(self, segment: StackedSegment) -> BatchEvaluation:
        """Evaluate a segment from the full matrix formulas, no running sums."""
        h, sigma = segment.h, segment.sigma
        rows, q = h.shape
        if q != self.delta2.size or sigma.shape != (rows, rows):
            raise ContractError(
                f"Stacked shapes H {h.shape}, Sigma {sigma.shape} do not match q={self.delta2.size}"
            )
        observed = np.asarray(segment.observed, dtype=bool)
        trace_pi = int(observed.sum())
        if trace_pi == 0:
            return BatchEvaluation(
                log_marginal=0.0,
                quadratic=0.0,
                trace_pi=0,
                log_det_sigma=0.0,
                posterior=self._prior_posterior(),
            )
        y = np.where(observed, segment.y, 0.0)
        pseudo_inverse = padded_pseudo_inverse(sigma, observed)
        log_det_sigma = padded_log_det(sigma, observed)
        m = np.linalg.inv(h.T @ pseudo_inverse @ h + np.diag(1.0 / self.delta2))
        m = 0.5 * (m + m.T)
        precision = pseudo_inverse - pseudo_inverse @ h @ m @ h.T @ pseudo_inverse
        quadratic = max(float(y @ precision @ y), 0.0)
        mu_hat = m @ h.T @ pseudo_inverse @ y
        sign, log_det_m = np.linalg.slogdet(m)
        if sign <= 0:
            raise NumericalError("Posterior scale matrix is not positive definite")
        return BatchEvaluation(
            log_marginal=self._log_marginal(trace_pi, log_det_sigma, log_det_m, quadratic),
            quadratic=quadratic,
            trace_pi=trace_pi,
            log_det_sigma=log_det_sigma,
            posterior=self._assemble(mu_hat, m, trace_pi, quadratic),
        )

    def batch_log_marginal(self, segment: StackedSegment) -> LogProb:
        return self.batch_evaluate(segment).log_marginal
