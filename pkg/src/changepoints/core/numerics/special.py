"""Special functions needed by the emission and risk computations.

Only the handful of functions the conjugate Gaussian models use: log-gamma
for the inverse-Gamma normalizers and the Student-t / normal distribution
functions for the risk queries. The Student-t CDF goes through the
regularized incomplete beta function, choosing the argument that keeps the
smaller tail accurate.
"""

from __future__ import annotations

import math

from scipy.special import betainc, gammaln, log_ndtr, ndtr

from ..shared import DomainError
from .logprob import LogProb, safe_log


def log_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"log_gamma is defined for x > 0, got {x}")
    return float(gammaln(x))


def _student_t_lower_tail(x: float, dof: float) -> float:
    """P(T_dof <= -|x|)."""
    x2 = x * x
    if x2 < dof:
        # Central region: I_{x^2/(dof+x^2)}(1/2, dof/2) is well conditioned here.
        return 0.5 * (1.0 - float(betainc(0.5, 0.5 * dof, x2 / (dof + x2))))
    return 0.5 * float(betainc(0.5 * dof, 0.5, dof / (dof + x2)))


def _check_dof(dof: float) -> None:
    if not dof > 0:
        raise DomainError(f"Student-t degrees of freedom must be > 0, got {dof}")


def student_t_cdf(x: float, dof: float) -> float:
    """P(T_dof <= x) for fractional dof > 0."""
    _check_dof(dof)
    if x == 0:
        return 0.5
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    tail = _student_t_lower_tail(x, dof)
    return tail if x < 0 else 1.0 - tail


def student_t_log_cdf(x: float, dof: float) -> LogProb:
    _check_dof(dof)
    if x == 0:
        return math.log(0.5)
    if math.isinf(x):
        return 0.0 if x > 0 else -math.inf
    tail = _student_t_lower_tail(x, dof)
    return safe_log(tail) if x < 0 else math.log1p(-tail)


def normal_cdf(x: float) -> float:
    return float(ndtr(x))


def normal_log_cdf(x: float) -> LogProb:
    return float(log_ndtr(x))
