from .domain import DetectionReport, ExactReport, SegmentationMass, Series
from .repository import ReportRepository, RunConfigRepository, SeriesRepository
from .schemas import DetectionConfigurations, RunConfig
from .services import DetectionServices, Engines

__all__ = [
    "DetectionConfigurations",
    "DetectionReport",
    "DetectionServices",
    "Engines",
    "ExactReport",
    "ReportRepository",
    "RunConfig",
    "RunConfigRepository",
    "SegmentationMass",
    "Series",
    "SeriesRepository",
]
