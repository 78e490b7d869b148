from __future__ import annotations

from pydantic import BaseModel, ConfigDict


class SegmentTruth(BaseModel):
    model_config = ConfigDict(frozen=True)

    start: int
    end: int
    mu: tuple[float, ...]
    sigma2: float


class GroundTruth(BaseModel):
    """What ``simulate`` planted, written next to the data as ``truth.json``."""

    model_config = ConfigDict(frozen=True)

    seed: int
    n: int
    changepoints: tuple[int, ...]
    segments: tuple[SegmentTruth, ...]
