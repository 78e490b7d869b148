"""Random small problems shared by the cross-checking tests."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from changepoints.core.emission import EmissionConfig, EmissionServices, RiskQuery
from changepoints.core.length_prior import LengthPrior
from changepoints.core.masked_linalg import ObservationMask


class Instance(NamedTuple):
    prior: LengthPrior
    config: EmissionConfig
    emission: EmissionServices
    ys: np.ndarray
    masks: list[ObservationMask]
    query: RiskQuery


def random_prior(rng: np.random.Generator) -> LengthPrior:
    if rng.random() < 0.5:
        return LengthPrior(kind="geometric", p=float(rng.uniform(0.1, 0.6)))
    return LengthPrior(
        kind="negbin", p=float(rng.uniform(0.3, 0.8)), r=int(rng.integers(2, 4))
    )


def random_config(rng: np.random.Generator, d: int, noise: str | None = None) -> EmissionConfig:
    q = int(rng.integers(1, d + 1))
    a = rng.normal(size=(d, d))
    sigma0 = a @ a.T / d + 0.5 * np.eye(d)
    sigma0 = 0.5 * (sigma0 + sigma0.T)
    noise = noise or ("fixed" if rng.random() < 0.5 else "invgamma")
    extra: dict[str, float] = (
        {"sigma2": float(rng.uniform(0.5, 2.0))}
        if noise == "fixed"
        else {"nu": float(rng.uniform(1.0, 5.0)), "gamma": float(rng.uniform(0.5, 3.0))}
    )
    return EmissionConfig(
        d=d,
        q=q,
        H0=rng.normal(size=(d, q)).tolist(),
        Sigma0=sigma0.tolist(),
        delta2=rng.uniform(0.5, 3.0, size=q).tolist(),
        noise=noise,
        **extra,
    )


def random_observations(
    rng: np.random.Generator, n: int, d: int
) -> tuple[np.ndarray, list[ObservationMask]]:
    ys = rng.normal(size=(n, d)) * 1.5 + np.repeat(
        rng.normal(scale=3.0, size=(1, d)), n, axis=0
    )
    masks = []
    for t in range(n):
        flags = np.zeros(d, dtype=bool) if rng.random() < 0.15 else rng.random(d) < 0.7
        ys[t, ~flags] = np.nan
        masks.append(ObservationMask.of(flags))
    return ys, masks


def random_instance(
    seed: int, n_max: int = 8, d_max: int = 2, noise: str | None = None
) -> Instance:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    config = random_config(rng, d, noise)
    ys, masks = random_observations(rng, n, d)
    assert config.q is not None
    v = rng.normal(size=config.q)
    return Instance(
        prior=random_prior(rng),
        config=config,
        emission=EmissionServices(config),
        ys=ys,
        masks=masks,
        query=RiskQuery(v=tuple(float(x) for x in v), theta=float(rng.normal())),
    )
