from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field


class ObservationMask(BaseModel):
    """Which signal components are observed at one date (the diagonal of Pi_t)."""

    model_config = ConfigDict(frozen=True)

    flags: tuple[bool, ...] = Field(description="One activation flag per component.")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def observed_count(self) -> int:
        return sum(self.flags)

    @property
    def dimension(self) -> int:
        return len(self.flags)

    @property
    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    @property
    def is_empty(self) -> bool:
        return not any(self.flags)

    @classmethod
    def full(cls, d: int) -> ObservationMask:
        return cls(flags=(True,) * d)

    @classmethod
    def empty(cls, d: int) -> ObservationMask:
        return cls(flags=(False,) * d)

    @classmethod
    def of(cls, flags: Sequence[bool] | np.ndarray) -> ObservationMask:
        return cls(flags=tuple(bool(flag) for flag in flags))

    @classmethod
    def from_values(cls, y: np.ndarray) -> ObservationMask:
        """Observed wherever the value is present (not NaN)."""
        return cls.of(~np.isnan(np.asarray(y, dtype=float)))
