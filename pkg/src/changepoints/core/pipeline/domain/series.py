from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ...masked_linalg import ObservationMask


class Series(BaseModel):
    """An n x d table of observations; NaN marks an unobserved cell."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    index: tuple[str, ...]
    values: np.ndarray

    @model_validator(mode="after")
    def validate_shape(self) -> Series:
        if self.values.ndim != 2 or self.values.shape[0] != len(self.index):
            raise ValueError(
                f"values must be {len(self.index)} x d, got shape {self.values.shape}"
            )
        return self

    @classmethod
    def numbered(cls, values: np.ndarray) -> Series:
        return cls(index=tuple(str(t) for t in range(1, len(values) + 1)), values=values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    @property
    def masks(self) -> list[ObservationMask]:
        return [ObservationMask.from_values(row) for row in self.values]
