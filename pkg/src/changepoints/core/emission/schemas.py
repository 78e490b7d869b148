from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from ..masked_linalg import CovarianceSpec

Matrix = list[list[float]] | list[float]


def _as_matrix(value: Matrix, rows: int, columns: int, key: str) -> np.ndarray:
    """Accept nested rows or a flat row-major list."""
    matrix = np.array(value, dtype=float)
    if matrix.ndim == 1 and matrix.size == rows * columns:
        matrix = matrix.reshape(rows, columns)
    if matrix.shape != (rows, columns):
        raise ValueError(
            f"{key} must be {rows}x{columns} (row-major), got shape {matrix.shape}"
        )
    return matrix


class EmissionConfig(BaseModel):
    """The ``model.*`` keys: per-date design, noise and prior scales.

    Segment model: ``y_t = H0 mu + eps_t``, ``eps_t ~ N(0, sigma2 Sigma0)``,
    ``mu ~ N(0, sigma2 D)`` with ``D = diag(delta2)``; sigma2 is either fixed
    or drawn from an inverse-Gamma(nu/2, gamma/2).
    """

    model_config = ConfigDict(extra="forbid")

    d: int = Field(ge=1, description="Signal dimension.")
    q: int | None = Field(default=None, ge=1, description="Covariate count, q <= d.")
    H0: Matrix | None = Field(default=None, description="d x q covariates.")
    Sigma0: Matrix | None = Field(default=None, description="d x d noise covariance.")
    delta2: list[float] | None = Field(default=None, description="Prior scales.")
    noise: Literal["fixed", "invgamma"] = "fixed"
    sigma2: float | None = Field(default=None, gt=0)
    nu: float | None = Field(default=None, gt=0)
    gamma: float | None = Field(default=None, gt=0)

    _h0: np.ndarray = PrivateAttr()
    _covariance: CovarianceSpec = PrivateAttr()
    _delta2: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def validate_model(self) -> EmissionConfig:
        if self.q is None:
            self.q = self.d
        if self.q > self.d:
            raise ValueError(f"q must be <= d, got q={self.q}, d={self.d}")
        self._h0 = (
            np.eye(self.d, self.q)
            if self.H0 is None
            else _as_matrix(self.H0, self.d, self.q, "H0")
        )
        sigma0 = (
            np.eye(self.d)
            if self.Sigma0 is None
            else _as_matrix(self.Sigma0, self.d, self.d, "Sigma0")
        )
        self._covariance = CovarianceSpec(sigma0=sigma0)
        delta2 = np.ones(self.q) if self.delta2 is None else np.array(self.delta2)
        if delta2.shape != (self.q,) or not np.all(delta2 > 0):
            raise ValueError(f"delta2 must hold {self.q} positive values")
        self._delta2 = delta2
        if self.noise == "fixed":
            if self.nu is not None or self.gamma is not None:
                raise ValueError("nu and gamma only apply to noise = invgamma")
            if self.sigma2 is None:
                self.sigma2 = 1.0
        else:
            if self.sigma2 is not None:
                raise ValueError("sigma2 only applies to noise = fixed")
            if self.nu is None or self.gamma is None:
                raise ValueError("invgamma noise needs both nu and gamma")
        return self

    @property
    def h0(self) -> np.ndarray:
        return self._h0

    @property
    def covariance(self) -> CovarianceSpec:
        return self._covariance

    @property
    def prior_scales(self) -> np.ndarray:
        return self._delta2

    @property
    def is_white_noise(self) -> bool:
        """H0 = I and Sigma0 = I: the diagonal closed forms apply."""
        return self.q == self.d and bool(
            np.array_equal(self._h0, np.eye(self.d)) and self._covariance.is_identity
        )


class RiskQuery(BaseModel):
    """Event ``v' mu <= theta`` on the last segment's location parameter.

    With ``space="prediction"`` v lives in signal space and the event is
    ``v' H0 mu <= theta``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    v: tuple[float, ...]
    theta: float
    space: Literal["parameter", "prediction"] = "parameter"
    variant: Literal["posterior", "prior"] = "posterior"

    @model_validator(mode="after")
    def validate_direction(self) -> RiskQuery:
        if not any(self.v):
            raise ValueError("risk direction v must be nonzero")
        return self
