from .length_prior import TAIL_SURVIVAL, Hazard, LengthPrior

__all__ = [
    "Hazard",
    "LengthPrior",
    "TAIL_SURVIVAL",
]
