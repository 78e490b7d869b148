"""Brute-force references for small problems.

Enumeration visits all 2^(n-1) segmentations and scores each segment with
the stacked (batch) evaluator, so nothing here shares code with the
streaming recursion beyond the prior tables and the final conjugate
formulas. The quadrature reference integrates the scalar model directly
against scipy densities.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence

import numpy as np
from scipy import integrate, optimize
from scipy.stats import invgamma, norm

from ..emission import EmissionServices, RiskQuery, StackedSegment
from ..length_prior import LengthPrior
from ..masked_linalg import ObservationMask
from ..numerics import LogProb, log_sum_exp, safe_log
from ..posterior import argmax_smallest, predecessor_kernel
from ..shared import ContractError, InputError
from .domain import ExactPosterior

logger = logging.getLogger(__name__)

MAX_LENGTH = 16


class OracleServices:
    def __init__(self, prior: LengthPrior, emission: EmissionServices):
        self.prior = prior
        self.emission = emission

    def log_segmentation_prior(self, changepoints: Sequence[int], n: int) -> LogProb:
        """log of g0(tau_1 - 1) prod g(gaps) (1 - G(n - tau_m)).

        With no changepoint after 1 the single segment has mass 1 - G0(n - 1).
        """
        starts = [t for t in changepoints if t >= 2]
        if not starts:
            return safe_log(self.prior.residual_survival(n - 1))
        total = safe_log(self.prior.residual_mass(starts[0] - 1))
        for before, after in zip(starts, starts[1:]):
            total += safe_log(self.prior.mass(after - before))
        return total + safe_log(self.prior.survival(n - starts[-1]))

    def enumerate_posterior(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> ExactPosterior:
        n = len(ys)
        if n != len(masks):
            raise ContractError("One mask per date is required")
        if n == 0:
            raise ContractError("Enumeration needs at least one date")
        if n > MAX_LENGTH:
            raise InputError(
                f"Exact enumeration is limited to n <= {MAX_LENGTH} dates, got {n}"
            )
        config = self.emission.config
        evaluations = {}

        def segment(start: int, end: int):
            key = (start, end)
            if key not in evaluations:
                evaluations[key] = self.emission.batch_evaluate(
                    StackedSegment.from_dates(
                        config.h0,
                        config.covariance.sigma0,
                        ys[start - 1 : end],
                        masks[start - 1 : end],
                    )
                )
            return evaluations[key]

        size = 1 << (n - 1)
        log_prior = np.empty(size)
        log_joint = np.empty(size)
        for index in range(size):
            changepoints = (1,) + tuple(
                t for t in range(2, n + 1) if index >> (t - 2) & 1
            )
            log_prior[index] = self.log_segmentation_prior(changepoints, n)
            ends = [t - 1 for t in changepoints[1:]] + [n]
            log_joint[index] = log_prior[index] + math.fsum(
                segment(start, end).log_marginal
                for start, end in zip(changepoints, ends)
            )
        log_evidence = log_sum_exp(log_joint)
        logger.debug("Enumerated %d segmentations, log evidence %.10g", size, log_evidence)
        return ExactPosterior(
            n=n,
            log_prior=log_prior,
            log_weights=log_joint - log_evidence,
            log_evidence=log_evidence,
            last_segment_posteriors={
                j: segment(j, n).posterior for j in range(1, n + 1)
            },
        )

    def prefix_distributions(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> list[dict[int, float]]:
        """Exact p_t (last changepoint law given y_1:t) for t = 1..n."""
        return [
            self.enumerate_posterior(ys[:t], masks[:t]).last_changepoint()
            for t in range(1, len(ys) + 1)
        ]

    def greedy_map(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> tuple[int, ...]:
        """Backward argmax chain computed from the exact prefix laws."""
        prefixes = self.prefix_distributions(ys, masks)
        j = argmax_smallest(prefixes[-1])
        changepoints = [j]
        while j > 1:
            j = argmax_smallest(predecessor_kernel(self.prior, prefixes[j - 2], j))
            changepoints.append(j)
        return tuple(reversed(changepoints))

    def risk(self, exact: ExactPosterior, query: RiskQuery) -> float:
        """Mixture over the last changepoint of the within-segment risk."""
        return math.fsum(
            probability
            * math.exp(
                self.emission.posterior_risk_log_probability(
                    exact.last_segment_posteriors[j], query
                )
            )
            for j, probability in exact.last_changepoint().items()
        )

    def _scalar_values(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> np.ndarray:
        config = self.emission.config
        if config.d != 1 or config.q != 1:
            raise ContractError("Quadrature is only available for d = q = 1")
        return np.array(
            [float(np.asarray(y).ravel()[0]) for y, m in zip(ys, masks) if m.flags[0]]
        )

    def _quadrature(self, values: np.ndarray, region: _Region) -> LogProb:
        """log of the joint density of (mu, data) integrated over mu in ``region``."""
        config = self.emission.config
        h = float(config.h0[0, 0])
        s = float(config.covariance.sigma0[0, 0])
        delta2 = float(config.prior_scales[0])
        if config.noise == "fixed":
            assert config.sigma2 is not None
            return _integrate_mean(
                values, h, s * config.sigma2, delta2 * config.sigma2, region
            )
        assert config.nu is not None and config.gamma is not None
        return _integrate_mean_and_variance(
            values, h, s, delta2, config.nu, config.gamma, region
        )

    def quadrature_marginal(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> LogProb:
        """log P(segment) by numerical integration, scalar models only."""
        values = self._scalar_values(ys, masks)
        if values.size == 0:
            return 0.0
        return self._quadrature(values, _WHOLE_LINE)

    def quadrature_risk(
        self,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
        query: RiskQuery,
    ) -> float:
        """P(v' mu <= theta | segment) as a ratio of two integrals, scalar models only.

        With unknown noise this is the integral of P(v mu <= theta | y, sigma2)
        against the posterior of sigma2, computed without the conjugate forms.
        """
        values = self._scalar_values(ys, masks)
        if len(query.v) != 1:
            raise ContractError(f"Risk direction must have 1 entry, got {len(query.v)}")
        c = query.v[0]
        if query.space == "prediction":
            c *= float(self.emission.config.h0[0, 0])
        boundary = query.theta / c
        region = (-math.inf, boundary) if c > 0 else (boundary, math.inf)
        event = self._quadrature(values, region)
        total = self._quadrature(values, _WHOLE_LINE)
        return min(max(math.exp(event - total), 0.0), 1.0)


_Region = tuple[float, float]
_WHOLE_LINE: _Region = (-math.inf, math.inf)
_QUAD_OPTIONS = {"epsabs": 0.0, "epsrel": 1e-10, "limit": 200}


def _log_data(values: np.ndarray, h: float, mu: float, variance: float) -> float:
    return float(norm.logpdf(values, loc=h * mu, scale=math.sqrt(variance)).sum())


def _quad_window(
    function: Callable[[float], float], peak: float, spread: float, region: _Region
) -> float:
    """Integral of a peaked function over ``region`` cut to +-40 spreads."""
    lower = max(peak - 40 * spread, region[0])
    upper = min(peak + 40 * spread, region[1])
    if not upper > lower:
        return 0.0
    points = [peak] if lower < peak < upper else None
    value, _ = integrate.quad(function, lower, upper, points=points, **_QUAD_OPTIONS)
    return max(value, 0.0)


def _integrate_mean(
    values: np.ndarray,
    h: float,
    noise_variance: float,
    prior_variance: float,
    region: _Region,
) -> float:
    def log_integrand(mu: float) -> float:
        return _log_data(values, h, mu, noise_variance) + float(
            norm.logpdf(mu, scale=math.sqrt(prior_variance))
        )

    spread = math.sqrt(1.0 / (values.size * h * h / noise_variance + 1.0 / prior_variance))
    peak = optimize.minimize_scalar(lambda mu: -log_integrand(mu)).x
    shift = log_integrand(peak)
    value = _quad_window(
        lambda mu: math.exp(log_integrand(mu) - shift), peak, spread, region
    )
    return shift + safe_log(value)


def _integrate_mean_and_variance(
    values: np.ndarray,
    h: float,
    s: float,
    delta2: float,
    nu: float,
    gamma: float,
    region: _Region,
) -> float:
    # Outer variable is u = log sigma2; the Jacobian contributes + u.
    def log_integrand(mu: float, u: float) -> float:
        sigma2 = math.exp(u)
        return (
            _log_data(values, h, mu, s * sigma2)
            + float(norm.logpdf(mu, scale=math.sqrt(delta2 * sigma2)))
            + float(invgamma.logpdf(sigma2, 0.5 * nu, scale=0.5 * gamma))
            + u
        )

    result = optimize.minimize(
        lambda x: -log_integrand(x[0], x[1]),
        x0=_starting_point(values, h, gamma / nu),
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
    )
    mu_peak, u_peak = float(result.x[0]), float(result.x[1])
    shift = log_integrand(mu_peak, u_peak)
    unit_spread = math.sqrt(1.0 / (values.size * h * h / s + 1.0 / delta2))
    shape = 0.5 * (nu + values.size)

    def inner(u: float) -> float:
        return _quad_window(
            lambda mu: math.exp(log_integrand(mu, u) - shift),
            mu_peak,
            unit_spread * math.exp(0.5 * u),
            region,
        )

    value, _ = integrate.quad(
        inner,
        u_peak - 40.0,
        u_peak + max(60.0, 40.0 / shape),
        points=[u_peak],
        **_QUAD_OPTIONS,
    )
    return shift + safe_log(max(value, 0.0))


def _starting_point(values: np.ndarray, h: float, variance: float) -> np.ndarray:
    if values.size == 0:
        return np.array([0.0, math.log(variance)])
    return np.array([float(values.mean()) / h, math.log(float(values.var()) + variance)])
