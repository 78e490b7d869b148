from .domain import (
    MarginalReport,
    Segmentation,
    SegmentSummary,
    argmax_smallest,
    predecessor_kernel,
)
from .services import PosteriorServices

__all__ = [
    "MarginalReport",
    "PosteriorServices",
    "SegmentSummary",
    "Segmentation",
    "argmax_smallest",
    "predecessor_kernel",
]
