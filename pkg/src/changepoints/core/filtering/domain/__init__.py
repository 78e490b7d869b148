from .particle import FilterState, Particle, PruneRecord
from .trace import FilterTrace, TraceStep

__all__ = [
    "FilterState",
    "FilterTrace",
    "Particle",
    "PruneRecord",
    "TraceStep",
]
