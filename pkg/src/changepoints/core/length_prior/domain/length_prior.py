from __future__ import annotations

import logging
import threading
from typing import Literal, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.stats import nbinom

from ...shared import DomainError

logger = logging.getLogger(__name__)

# Survival below this is treated as exhausted: tables stop growing and the
# hazard forces a change.
TAIL_SURVIVAL = 1e-12


class Hazard(NamedTuple):
    stay: float
    change: float


class _Tables:
    """Probability tables indexed by segment length, index 0 included.

    ``survival[t] = 1 - G(t)``, ``residual_survival[d] = 1 - G0(d)``.
    """

    def __init__(self) -> None:
        self.horizon = 0
        self.mass = np.zeros(1)
        self.survival = np.ones(1)
        self.residual_mass = np.zeros(1)
        self.residual_survival = np.ones(1)
        self.exhausted = False


class LengthPrior(BaseModel):
    """Renewal law of segment lengths.

    The negative binomial counts Bernoulli(p) trials up to the r-th success,
    so its support starts at r; r = 1 is the geometric law. The residual law
    g0 of the first segment comes from the survival-bias formula
    ``g0(d) = (1 - G(d-1)) / E[L]`` with ``E[L] = r / p``.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["geometric", "negbin"] = Field(description="Length family.")
    p: float = Field(gt=0, le=1, description="Success probability per trial.")
    r: int = Field(default=1, ge=1, description="Successes per segment.")
    horizon: int = Field(default=64, ge=1, description="Initial table horizon.")

    _tables: _Tables = PrivateAttr(default_factory=_Tables)
    _lock: threading.Lock = PrivateAttr(default_factory=threading.Lock)

    @model_validator(mode="after")
    def validate_kind(self) -> LengthPrior:
        if self.kind == "geometric" and self.r != 1:
            raise ValueError(f"A geometric prior has r = 1, got r = {self.r}")
        return self

    @property
    def mean_length(self) -> float:
        return self.r / self.p

    # -- closed forms -----------------------------------------------------

    def _mass_at(self, t: np.ndarray) -> np.ndarray:
        return nbinom.pmf(t - self.r, self.r, self.p)

    def _survival_at(self, t: np.ndarray) -> np.ndarray:
        # P(L > t); nbinom.sf of a negative count is 1.
        return nbinom.sf(t - self.r, self.r, self.p)

    def _residual_survival_at(self, d: np.ndarray) -> np.ndarray:
        # Stationary phase of the r-step cycle is uniform, so the residual
        # time is an equal mixture of negative binomials with 1..r successes.
        return np.mean(
            [nbinom.sf(d - i, i, self.p) for i in range(1, self.r + 1)], axis=0
        )

    # -- lazily grown tables ------------------------------------------------

    def _ensure(self, t: int) -> _Tables:
        tables = self._tables
        if t <= tables.horizon or tables.exhausted:
            return tables
        with self._lock:
            horizon = max(tables.horizon, self.horizon)
            while horizon < t:
                horizon *= 2
            if horizon > tables.horizon and not tables.exhausted:
                self._fill(tables, horizon)
        return tables

    def _fill(self, tables: _Tables, horizon: int) -> None:
        lengths = np.arange(horizon + 1)
        survival = self._survival_at(lengths)
        mass = np.concatenate(([0.0], self._mass_at(lengths[1:])))
        residual_mass = np.concatenate(
            ([0.0], survival[:-1] / self.mean_length)
        )
        residual_survival = self._residual_survival_at(lengths)
        exhausted = bool(survival[-1] < TAIL_SURVIVAL)
        if exhausted:
            # Trim at the first length whose survival falls below the cap.
            cap = int(np.argmax(survival < TAIL_SURVIVAL))
            horizon = cap
            mass, survival = mass[: cap + 1], survival[: cap + 1]
            residual_mass = residual_mass[: cap + 1]
            residual_survival = residual_survival[: cap + 1]
        tables.mass = mass
        tables.survival = survival
        tables.residual_mass = residual_mass
        tables.residual_survival = residual_survival
        tables.horizon = horizon
        tables.exhausted = exhausted
        logger.debug(
            "Length prior %s tabulated to horizon %d (exhausted=%s)",
            self.describe(),
            horizon,
            exhausted,
        )

    def _lookup(self, column: str, t: int) -> float:
        tables = self._ensure(t)
        if t <= tables.horizon:
            return float(getattr(tables, column)[t])
        # Beyond the cap the closed forms still answer exactly.
        at = np.asarray([t])
        match column:
            case "mass":
                return float(self._mass_at(at)[0])
            case "survival":
                return float(self._survival_at(at)[0])
            case "residual_mass":
                return float(self._survival_at(at - 1)[0] / self.mean_length)
            case _:
                return float(self._residual_survival_at(at)[0])

    # -- public queries -----------------------------------------------------

    def mass(self, t: int) -> float:
        """g(t)."""
        if t < 1:
            raise DomainError(f"Segment length must be >= 1, got {t}")
        return self._lookup("mass", t)

    def cdf(self, t: int) -> float:
        """G(t); G(0) = 0."""
        return 1.0 - self.survival(t)

    def survival(self, t: int) -> float:
        """1 - G(t)."""
        if t < 0:
            raise DomainError(f"Survival is defined for t >= 0, got {t}")
        return self._lookup("survival", t)

    def residual_mass(self, d: int) -> float:
        """g0(d), the law of the first segment's length."""
        if d < 1:
            raise DomainError(f"Residual length must be >= 1, got {d}")
        return self._lookup("residual_mass", d)

    def residual_cdf(self, d: int) -> float:
        return 1.0 - self.residual_survival(d)

    def residual_survival(self, d: int) -> float:
        """1 - G0(d)."""
        if d < 0:
            raise DomainError(f"Survival is defined for d >= 0, got {d}")
        return self._lookup("residual_survival", d)

    def hazard(self, age: int, first_segment: bool) -> Hazard:
        """Transition of the predecessor-changepoint chain.

        A segment that has lasted ``age`` dates either goes on (stay) or ends,
        making the next date a changepoint (change). The first segment uses
        the residual law.
        """
        if age < 1:
            raise DomainError(f"Segment age must be >= 1, got {age}")
        if first_segment:
            before = self.residual_survival(age - 1)
            after, ending = self.residual_survival(age), self.residual_mass(age)
        else:
            before = self.survival(age - 1)
            after, ending = self.survival(age), self.mass(age)
        if before < TAIL_SURVIVAL:
            return Hazard(stay=0.0, change=1.0)
        return Hazard(stay=after / before, change=ending / before)

    def sample_length(self, rng: np.random.Generator, first_segment: bool) -> int:
        """Draw a segment length from g, or from g0 for the first segment."""
        successes = int(rng.integers(1, self.r + 1)) if first_segment else self.r
        # numpy counts failures before the last success.
        return int(rng.negative_binomial(successes, self.p)) + successes

    def describe(self) -> str:
        if self.kind == "geometric":
            return f"geometric(p={self.p})"
        return f"negbin(r={self.r}, p={self.p})"
