from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from ...emission import SegmentPosterior


class ExactPosterior(BaseModel):
    """Every segmentation of [1, n] with its normalized posterior weight.

    Segmentation k has changepoint t (t >= 2) whenever bit t - 2 of k is set.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    log_prior: np.ndarray
    log_weights: np.ndarray
    log_evidence: float
    last_segment_posteriors: dict[int, SegmentPosterior]

    def changepoints(self, index: int) -> tuple[int, ...]:
        return (1,) + tuple(t for t in range(2, self.n + 1) if index >> (t - 2) & 1)

    def index_of(self, changepoints: tuple[int, ...]) -> int:
        return sum(1 << (t - 2) for t in changepoints if t >= 2)

    @property
    def size(self) -> int:
        return self.log_weights.size

    def probability(self, changepoints: tuple[int, ...]) -> float:
        return math.exp(self.log_weights[self.index_of(changepoints)])

    def prior_probability(self, changepoints: tuple[int, ...]) -> float:
        return math.exp(self.log_prior[self.index_of(changepoints)])

    def _last(self, index: int) -> int:
        return index.bit_length() + 1 if index else 1

    def marginals(self) -> dict[int, float]:
        """P(t is a changepoint | y) for t = 2..n."""
        weights = np.exp(self.log_weights)
        indices = np.arange(self.size)
        return {
            t: float(weights[(indices >> (t - 2)) & 1 == 1].sum())
            for t in range(2, self.n + 1)
        }

    def last_changepoint(self) -> dict[int, float]:
        law: dict[int, float] = {}
        for index, log_weight in enumerate(self.log_weights):
            last = self._last(index)
            law[last] = law.get(last, 0.0) + math.exp(log_weight)
        return law

    def joint_map(self) -> tuple[int, ...]:
        """The single most probable segmentation."""
        return self.changepoints(int(np.argmax(self.log_weights)))
