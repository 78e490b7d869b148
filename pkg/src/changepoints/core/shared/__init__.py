from .errors import (
    ChangepointError,
    ConfigError,
    ContractError,
    DomainError,
    InputError,
    NumericalError,
    SingularityError,
)
from .seeding import Stream, generator

__all__ = [
    "ChangepointError",
    "ConfigError",
    "ContractError",
    "DomainError",
    "InputError",
    "NumericalError",
    "SingularityError",
    "Stream",
    "generator",
]
