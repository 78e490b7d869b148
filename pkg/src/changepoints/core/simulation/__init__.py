from .domain import GroundTruth, SegmentTruth
from .schemas import SimulationConfig
from .services import SimulationServices

__all__ = [
    "GroundTruth",
    "SegmentTruth",
    "SimulationConfig",
    "SimulationServices",
]
