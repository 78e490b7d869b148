from .domain import FilterState, FilterTrace, Particle, PruneRecord, TraceStep
from .schemas import FilterConfig
from .services import FilterServices

__all__ = [
    "FilterConfig",
    "FilterServices",
    "FilterState",
    "FilterTrace",
    "Particle",
    "PruneRecord",
    "TraceStep",
]
