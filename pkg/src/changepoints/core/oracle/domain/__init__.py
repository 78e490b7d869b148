from .exact_posterior import ExactPosterior

__all__ = ["ExactPosterior"]
