from __future__ import annotations

import logging
import math
from collections.abc import Mapping

from ...length_prior import LengthPrior

logger = logging.getLogger(__name__)

NORMALIZATION_TOLERANCE = 1e-6


def predecessor_kernel(
    prior: LengthPrior, weights: Mapping[int, float], j: int
) -> dict[int, float]:
    """Law of the changepoint preceding changepoint j.

    ``weights`` is p_{j-1}. Given that j starts a segment the predecessor i
    has probability proportional to p_{j-1}(i) times the hazard of a change
    after j - i dates, the first segment using the residual law.
    """
    total = sum(weights.values())
    if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
        logger.warning("p_%d sums to %.9f, not 1", j - 1, total)
    scores = {
        i: w * prior.hazard(j - i, first_segment=i == 1).change
        for i, w in weights.items()
        if w > 0 and i < j
    }
    mass = math.fsum(scores.values())
    if mass <= 0:
        logger.warning(
            "No surviving predecessor of changepoint %d carries change mass", j
        )
        scores = {i: w for i, w in weights.items() if i < j}
        mass = math.fsum(scores.values())
    return {i: score / mass for i, score in scores.items()}


def argmax_smallest(probabilities: Mapping[int, float]) -> int:
    """Most probable key, ties going to the smaller index."""
    return min(probabilities, key=lambda i: (-probabilities[i], i))
