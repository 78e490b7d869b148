from .kernel import argmax_smallest, predecessor_kernel
from .segmentation import MarginalReport, SegmentSummary, Segmentation

__all__ = [
    "MarginalReport",
    "SegmentSummary",
    "Segmentation",
    "argmax_smallest",
    "predecessor_kernel",
]
