from .posterior import LinearTransformLaw, SegmentPosterior
from .stacked import BatchEvaluation, StackedSegment

__all__ = [
    "BatchEvaluation",
    "LinearTransformLaw",
    "SegmentPosterior",
    "StackedSegment",
]
