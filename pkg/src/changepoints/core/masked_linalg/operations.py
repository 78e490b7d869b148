"""Projector-masked covariance algebra for partially observed dates.

The working route gathers the observed components, factors the small dense
block of Sigma0 and scatters results back. The padded-identity forms
``Pi [(I - Pi) + Pi S Pi]^-1 Pi`` and ``|(I - Pi) + Pi S Pi|`` work on a
covariance of any size and back the stacked evaluator and the tests.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from ..shared import ContractError, InputError, SingularityError
from .domain import CovarianceSpec, DateIncrement, ObservationMask, SegmentStats

MAX_CONDITION = 1e12


class ObservedFactor(NamedTuple):
    """Cholesky factor of Sigma0 restricted to the observed components."""

    indices: np.ndarray
    cholesky: np.ndarray
    log_det: float


def _check_mask(cov: CovarianceSpec, mask: ObservationMask) -> None:
    if mask.dimension != cov.dimension:
        raise ContractError(
            f"Mask has {mask.dimension} components, covariance has {cov.dimension}"
        )


def _factor(block: np.ndarray, t: int | None) -> np.ndarray:
    if np.linalg.cond(block) > MAX_CONDITION:
        raise SingularityError("observed covariance block is ill-conditioned", t=t)
    try:
        return np.linalg.cholesky(block)
    except np.linalg.LinAlgError:
        raise SingularityError("observed covariance block is not positive definite", t=t)


def factor_observed_block(
    cov: CovarianceSpec, mask: ObservationMask, t: int | None = None
) -> ObservedFactor:
    _check_mask(cov, mask)
    indices = mask.indices
    if indices.size == 0:
        return ObservedFactor(indices=indices, cholesky=np.zeros((0, 0)), log_det=0.0)
    lower = _factor(cov.sigma0[np.ix_(indices, indices)], t)
    return ObservedFactor(
        indices=indices,
        cholesky=lower,
        log_det=2.0 * float(np.sum(np.log(np.diag(lower)))),
    )


def masked_pseudo_inverse(
    cov: CovarianceSpec, mask: ObservationMask, t: int | None = None
) -> np.ndarray:
    """(Pi_t Sigma0 Pi_t)^+: the inverse observed block, zero elsewhere."""
    factor = factor_observed_block(cov, mask, t)
    result = np.zeros_like(cov.sigma0)
    if factor.indices.size:
        block = cho_solve((factor.cholesky, True), np.eye(factor.indices.size))
        result[np.ix_(factor.indices, factor.indices)] = 0.5 * (block + block.T)
    return result


def restricted_log_det(
    cov: CovarianceSpec, mask: ObservationMask, t: int | None = None
) -> float:
    """log |(I - Pi_t) + Pi_t Sigma0 Pi_t|; 0 for an empty mask."""
    return factor_observed_block(cov, mask, t).log_det


def date_increment(
    y_t: np.ndarray,
    mask: ObservationMask,
    h0: np.ndarray,
    cov: CovarianceSpec,
    t: int | None = None,
    factor: ObservedFactor | None = None,
) -> DateIncrement:
    y_t = np.asarray(y_t, dtype=float)
    d, q = h0.shape
    if y_t.shape != (d,) or cov.dimension != d or mask.dimension != d:
        raise ContractError(
            f"Dimension mismatch: y {y_t.shape}, H0 {h0.shape}, "
            f"Sigma0 {cov.sigma0.shape}, mask {mask.dimension}"
        )
    if factor is None:
        factor = factor_observed_block(cov, mask, t)
    indices = factor.indices
    if indices.size == 0:
        return DateIncrement.model_construct(
            a_data=np.zeros((q, q)), b=np.zeros(q), c=0.0, observed_count=0, log_det=0.0
        )
    observed = y_t[indices]
    if not np.all(np.isfinite(observed)):
        bad = int(indices[~np.isfinite(observed)][0])
        where = f"t={t}, " if t is not None else ""
        raise InputError(f"Non-finite observation at {where}component {bad + 1}")
    # Whitened design and data: Z = L^-1 H_o, z = L^-1 y_o.
    whitened_h = solve_triangular(factor.cholesky, h0[indices], lower=True)
    whitened_y = solve_triangular(factor.cholesky, observed, lower=True)
    return DateIncrement.model_construct(
        a_data=whitened_h.T @ whitened_h,
        b=whitened_h.T @ whitened_y,
        c=float(whitened_y @ whitened_y),
        observed_count=int(indices.size),
        log_det=factor.log_det,
    )


def accumulate(
    acc: SegmentStats,
    y_t: np.ndarray,
    mask: ObservationMask,
    h0: np.ndarray,
    cov: CovarianceSpec,
    t: int | None = None,
    factor: ObservedFactor | None = None,
) -> SegmentStats:
    """Add one date to a segment's running sums, returning a new value."""
    if acc.q != h0.shape[1]:
        raise ContractError(f"Accumulator has q={acc.q}, H0 has {h0.shape[1]} columns")
    return acc.extend(date_increment(y_t, mask, h0, cov, t=t, factor=factor))


def _padded(sigma: np.ndarray, observed: np.ndarray) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    projector = np.diag(np.asarray(observed, dtype=float))
    if sigma.shape != projector.shape:
        raise ContractError(
            f"Covariance {sigma.shape} does not match mask of {projector.shape[0]}"
        )
    identity = np.eye(sigma.shape[0])
    return (identity - projector) + projector @ sigma @ projector


def padded_pseudo_inverse(sigma: np.ndarray, observed: np.ndarray) -> np.ndarray:
    """Pi [(I - Pi) + Pi Sigma Pi]^-1 Pi for a covariance of any size."""
    padded = _padded(sigma, observed)
    if np.linalg.cond(padded) > MAX_CONDITION:
        raise SingularityError("padded covariance is ill-conditioned")
    projector = np.diag(np.asarray(observed, dtype=float))
    return projector @ np.linalg.inv(padded) @ projector


def padded_log_det(sigma: np.ndarray, observed: np.ndarray) -> float:
    """log |(I - Pi) + Pi Sigma Pi|."""
    sign, log_det = np.linalg.slogdet(_padded(sigma, observed))
    if sign <= 0:
        raise SingularityError("padded covariance is not positive definite")
    return float(log_det)
