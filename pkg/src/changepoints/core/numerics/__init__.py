from .logprob import LogProb, log_sum_exp, safe_log
from .special import (
    log_gamma,
    normal_cdf,
    normal_log_cdf,
    student_t_cdf,
    student_t_log_cdf,
)

__all__ = [
    "LogProb",
    "log_gamma",
    "log_sum_exp",
    "normal_cdf",
    "normal_log_cdf",
    "safe_log",
    "student_t_cdf",
    "student_t_log_cdf",
]
