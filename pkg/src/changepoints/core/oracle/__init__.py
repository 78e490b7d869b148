from .domain import ExactPosterior
from .services import MAX_LENGTH, OracleServices

__all__ = ["ExactPosterior", "MAX_LENGTH", "OracleServices"]
