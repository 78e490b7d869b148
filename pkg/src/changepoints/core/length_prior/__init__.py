from .domain import TAIL_SURVIVAL, Hazard, LengthPrior
from .schemas import PriorConfig

__all__ = [
    "Hazard",
    "LengthPrior",
    "PriorConfig",
    "TAIL_SURVIVAL",
]
