from .accumulator import DateIncrement, SegmentAccumulator, SegmentStats
from .covariance import CovarianceSpec
from .mask import ObservationMask

__all__ = [
    "CovarianceSpec",
    "DateIncrement",
    "ObservationMask",
    "SegmentAccumulator",
    "SegmentStats",
]
