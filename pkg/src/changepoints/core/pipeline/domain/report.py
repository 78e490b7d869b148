from __future__ import annotations

from pydantic import BaseModel, ConfigDict

from ...filtering import FilterTrace
from ...posterior import MarginalReport, Segmentation, SegmentSummary


class DetectionReport(BaseModel):
    """Everything ``detect`` writes for one series."""

    model_config = ConfigDict(frozen=True)

    seed: int
    index: tuple[str, ...]
    log_evidence: float
    last_changepoint: dict[int, float]
    marginals: MarginalReport
    segmentation: Segmentation
    segments: tuple[SegmentSummary, ...]
    trace: FilterTrace
    risk: float | None = None


class SegmentationMass(BaseModel):
    model_config = ConfigDict(frozen=True)

    changepoints: tuple[int, ...]
    prior: float
    posterior: float


class ExactReport(BaseModel):
    """Enumeration results, with deviations from the filter when compared."""

    model_config = ConfigDict(frozen=True)

    n: int
    log_evidence: float
    marginals: dict[int, float]
    last_changepoint: dict[int, float]
    segmentations: tuple[SegmentationMass, ...]
    joint_map: tuple[int, ...]
    greedy_map: tuple[int, ...]
    risk: float | None = None
    deviations: dict[str, float] | None = None
