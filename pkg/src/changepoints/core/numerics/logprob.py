from __future__ import annotations

import math
from collections.abc import Iterable
from typing import Annotated

import numpy as np
from pydantic import AfterValidator
from scipy.special import logsumexp

from ..shared import ContractError


def _reject_nan(value: float) -> float:
    if math.isnan(value):
        raise ValueError("log-probability must not be NaN")
    return value


# Natural log of a nonnegative quantity; -inf encodes zero probability.
LogProb = Annotated[float, AfterValidator(_reject_nan)]


def safe_log(probability: float) -> LogProb:
    """Log of a probability, mapping exact zero to -inf without warnings."""
    if probability < 0:
        raise ContractError(f"Cannot take the log of negative mass {probability}")
    return math.log(probability) if probability > 0 else -math.inf


def log_sum_exp(values: Iterable[float] | np.ndarray) -> LogProb:
    """ln(sum(exp(values))) shifted by the maximum; -inf when every term is -inf."""
    array = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
    if array.size == 0:
        raise ContractError("log_sum_exp needs at least one value")
    if np.isnan(array).any():
        raise ContractError("log_sum_exp received NaN")
    if np.all(np.isneginf(array)):
        return -math.inf
    return float(logsumexp(array))
