from __future__ import annotations

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from ...shared import NumericalError


class SegmentPosterior(BaseModel):
    """Posterior law of (mu, sigma2) given one segment's observations.

    ``mu | sigma2 ~ N(mu_hat, sigma2 M)``; in inverse-Gamma mode
    ``sigma2 ~ InvGamma(sigma2_shape, sigma2_scale)``.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mu_hat: np.ndarray
    M: np.ndarray
    noise: Literal["fixed", "invgamma"]
    sigma2: float | None = None
    sigma2_shape: float | None = None
    sigma2_scale: float | None = None
    prior_shape: float | None = None
    prior_scale: float | None = None
    trace_pi: int = 0

    @property
    def dof(self) -> float:
        """nu + trace(Pi), the Student-t degrees of freedom of mu."""
        assert self.sigma2_shape is not None
        return 2.0 * self.sigma2_shape

    def sigma2_mean(self) -> float:
        if self.noise == "fixed":
            assert self.sigma2 is not None
            return self.sigma2
        assert self.sigma2_shape is not None and self.sigma2_scale is not None
        if not self.dof > 2:
            raise NumericalError(
                f"E[sigma2|y] needs nu + trace(Pi) > 2, got {self.dof}"
            )
        return self.sigma2_scale / (self.sigma2_shape - 1.0)

    def sigma2_variance(self) -> float:
        if self.noise == "fixed":
            return 0.0
        if not self.dof > 4:
            raise NumericalError(
                f"V[sigma2|y] needs nu + trace(Pi) > 4, got {self.dof}"
            )
        return 2.0 / (self.dof - 4.0) * self.sigma2_mean() ** 2


class LinearTransformLaw(BaseModel):
    """Law of A' mu: multivariate t (dof finite) or Gaussian (dof infinite)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    mean: np.ndarray
    scale: np.ndarray
    dof: float

    @property
    def covariance(self) -> np.ndarray:
        if math.isinf(self.dof):
            return self.scale
        if not self.dof > 2:
            raise NumericalError(f"Covariance needs dof > 2, got {self.dof}")
        return self.scale * self.dof / (self.dof - 2.0)
