from __future__ import annotations

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

SYMMETRY_TOLERANCE = 1e-12


class CovarianceSpec(BaseModel):
    """Per-date noise covariance Sigma0 (the full Sigma is its block diagonal)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    sigma0: np.ndarray

    @field_validator("sigma0", mode="before")
    @classmethod
    def validate_sigma0(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=float)
        if matrix.ndim == 0:
            matrix = matrix.reshape(1, 1)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Sigma0 must be square, got shape {matrix.shape}")
        if not np.all(np.isfinite(matrix)):
            raise ValueError("Sigma0 must be finite")
        if np.max(np.abs(matrix - matrix.T), initial=0.0) > SYMMETRY_TOLERANCE:
            raise ValueError("Sigma0 must be symmetric")
        try:
            np.linalg.cholesky(matrix)
        except np.linalg.LinAlgError:
            raise ValueError("Sigma0 must be positive definite")
        matrix.setflags(write=False)
        return matrix

    @property
    def dimension(self) -> int:
        return self.sigma0.shape[0]

    @property
    def is_identity(self) -> bool:
        return bool(np.array_equal(self.sigma0, np.eye(self.dimension)))
