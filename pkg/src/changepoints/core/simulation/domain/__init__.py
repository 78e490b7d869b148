from .truth import GroundTruth, SegmentTruth

__all__ = ["GroundTruth", "SegmentTruth"]
