from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Segmentation(BaseModel):
    """Partition of [1, n] given by its changepoints (segment starts)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    changepoints: tuple[int, ...]

    @model_validator(mode="after")
    def validate_changepoints(self) -> Segmentation:
        cps = self.changepoints
        if not cps or cps[0] != 1:
            raise ValueError("a segmentation starts with changepoint 1")
        if any(b <= a for a, b in zip(cps, cps[1:])):
            raise ValueError("changepoints must be strictly increasing")
        if cps[-1] > self.n:
            raise ValueError(f"changepoint {cps[-1]} lies beyond n={self.n}")
        return self

    @property
    def segments(self) -> list[tuple[int, int]]:
        """Inclusive [start, end] bounds."""
        ends = [cp - 1 for cp in self.changepoints[1:]] + [self.n]
        return list(zip(self.changepoints, ends))


class MarginalReport(BaseModel):
    """P(t is a changepoint | y_1:n) for t = 2..n, with the law of the last one."""

    model_config = ConfigDict(frozen=True)

    n: int
    changepoint_probabilities: dict[int, float]
    last_changepoint: dict[int, float]


class SegmentSummary(BaseModel):
    """Posterior description of one segment of a segmentation."""

    model_config = ConfigDict(frozen=True)

    start: int
    end: int
    mu_hat: tuple[float, ...]
    fitted: tuple[float, ...]
    sigma2_mean: float | None
