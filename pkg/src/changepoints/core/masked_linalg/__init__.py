from .domain import (
    CovarianceSpec,
    DateIncrement,
    ObservationMask,
    SegmentAccumulator,
    SegmentStats,
)
from .operations import (
    MAX_CONDITION,
    ObservedFactor,
    accumulate,
    date_increment,
    factor_observed_block,
    masked_pseudo_inverse,
    padded_log_det,
    padded_pseudo_inverse,
    restricted_log_det,
)

__all__ = [
    "CovarianceSpec",
    "DateIncrement",
    "MAX_CONDITION",
    "ObservationMask",
    "ObservedFactor",
    "SegmentAccumulator",
    "SegmentStats",
    "accumulate",
    "date_increment",
    "factor_observed_block",
    "masked_pseudo_inverse",
    "padded_log_det",
    "padded_pseudo_inverse",
    "restricted_log_det",
]
