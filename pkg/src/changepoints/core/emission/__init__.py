from .domain import (
    BatchEvaluation,
    LinearTransformLaw,
    SegmentPosterior,
    StackedSegment,
)
from .schemas import EmissionConfig, RiskQuery
from .services import EmissionServices

__all__ = [
    "BatchEvaluation",
    "EmissionConfig",
    "EmissionServices",
    "LinearTransformLaw",
    "RiskQuery",
    "SegmentPosterior",
    "StackedSegment",
]
