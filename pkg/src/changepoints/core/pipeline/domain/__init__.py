from .report import DetectionReport, ExactReport, SegmentationMass
from .series import Series

__all__ = ["DetectionReport", "ExactReport", "SegmentationMass", "Series"]
