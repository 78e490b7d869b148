from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class DateIncrement(BaseModel):
    """Contribution of one date to the running sums of a segment.

    With P = (Pi_t Sigma0 Pi_t)^+: ``a_data = H0' P H0``, ``b = H0' P y_t``,
    ``c = y_t' P y_t``, ``observed_count = trace(Pi_t)`` and ``log_det`` the
    log-determinant of Sigma0 restricted to the observed components.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a_data: np.ndarray
    b: np.ndarray
    c: float
    observed_count: int
    log_det: float

    @property
    def is_empty(self) -> bool:
        return self.observed_count == 0


class SegmentStats(BaseModel):
    """Sufficient statistics of one candidate segment.

    Value semantics: every update returns a new instance, so a particle can
    keep its statistics while a sibling extends a copy.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a_data: np.ndarray = Field(description="Sum of H0' P_t H0, q x q.")
    b: np.ndarray = Field(description="Sum of H0' P_t y_t, length q.")
    c: float = Field(default=0.0, description="Sum of y_t' P_t y_t.")
    trace_pi: int = Field(default=0, ge=0, description="Observed cells so far.")
    logdet_sum: float = Field(default=0.0, description="Sum of restricted log-dets.")
    length: int = Field(default=0, ge=0, description="Dates covered, k.")

    @classmethod
    def empty(cls, q: int) -> SegmentStats:
        return cls(a_data=np.zeros((q, q)), b=np.zeros(q))

    @property
    def q(self) -> int:
        return self.b.shape[0]

    @property
    def is_empty(self) -> bool:
        """No observed cell: the data carry no information."""
        return self.trace_pi == 0

    def extend(self, increment: DateIncrement) -> SegmentStats:
        """Statistics of the segment lengthened by one date."""
        if increment.is_empty:
            return self.model_copy(update={"length": self.length + 1})
        return SegmentStats.model_construct(
            a_data=self.a_data + increment.a_data,
            b=self.b + increment.b,
            c=self.c + increment.c,
            trace_pi=self.trace_pi + increment.observed_count,
            logdet_sum=self.logdet_sum + increment.log_det,
            length=self.length + 1,
        )


# The masked accumulator of a segment is its statistics.
SegmentAccumulator = SegmentStats
