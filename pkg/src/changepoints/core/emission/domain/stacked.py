from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.linalg import block_diag

from ...masked_linalg import ObservationMask
from ...shared import ContractError
from .posterior import SegmentPosterior


class StackedSegment(BaseModel):
    """A whole segment flattened to kd rows, without block structure.

    ``h`` is kd x q, ``sigma`` kd x kd, ``y`` and ``observed`` length kd.
    Lets H and Sigma vary over time or correlate across dates.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    h: np.ndarray
    sigma: np.ndarray
    y: np.ndarray
    observed: np.ndarray

    @classmethod
    def from_dates(
        cls,
        h0: np.ndarray,
        sigma0: np.ndarray,
        ys: Sequence[np.ndarray] | np.ndarray,
        masks: Sequence[ObservationMask],
    ) -> StackedSegment:
        """Stack k dates of a time-invariant design (H = (+) H0, Sigma = (+) Sigma0)."""
        if len(ys) != len(masks) or len(ys) == 0:
            raise ContractError("A stacked segment needs one mask per date, k >= 1")
        k = len(ys)
        observed = np.concatenate([np.array(mask.flags) for mask in masks])
        y = np.concatenate([np.asarray(y_t, dtype=float) for y_t in ys])
        return cls(
            h=np.vstack([h0] * k),
            sigma=block_diag(*([sigma0] * k)),
            y=np.where(observed, y, 0.0),
            observed=observed,
        )


class BatchEvaluation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    log_marginal: float
    quadratic: float
    trace_pi: int
    log_det_sigma: float
    posterior: SegmentPosterior
