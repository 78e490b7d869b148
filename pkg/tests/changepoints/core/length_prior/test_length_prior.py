import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.stats import nbinom

from changepoints.core.length_prior import LengthPrior, PriorConfig
from changepoints.core.shared import DomainError, Stream, generator


@pytest.fixture
def geometric() -> LengthPrior:
    return LengthPrior(kind="geometric", p=0.3)


@pytest.fixture
def negbin() -> LengthPrior:
    return LengthPrior(kind="negbin", p=0.5, r=2)


def test_geometric_mass_and_constant_hazard(geometric: LengthPrior) -> None:
    for t in range(1, 30):
        assert geometric.mass(t) == pytest.approx(0.3 * 0.7 ** (t - 1), rel=1e-12)
        stay, change = geometric.hazard(t, first_segment=False)
        assert stay == pytest.approx(0.7, abs=1e-12)
        assert change == pytest.approx(0.3, abs=1e-12)


def test_geometric_residual_law_is_the_length_law(geometric: LengthPrior) -> None:
    for d in range(1, 30):
        assert geometric.residual_mass(d) == pytest.approx(geometric.mass(d), rel=1e-12)


def test_negbin_support_starts_at_r(negbin: LengthPrior) -> None:
    assert negbin.mass(1) == 0.0
    assert negbin.mass(2) == pytest.approx(0.25)
    assert negbin.cdf(0) == 0.0
    assert negbin.mean_length == 4.0


def test_negbin_residual_mass_at_one(negbin: LengthPrior) -> None:
    assert negbin.residual_mass(1) == pytest.approx(0.25, abs=1e-15)


@pytest.mark.parametrize(
    "prior",
    [
        LengthPrior(kind="geometric", p=0.05),
        LengthPrior(kind="negbin", p=0.5, r=2),
        LengthPrior(kind="negbin", p=0.2, r=4),
    ],
)
def test_hazards_sum_to_one(prior: LengthPrior) -> None:
    for age in range(1, 300):
        for first in (True, False):
            stay, change = prior.hazard(age, first_segment=first)
            assert 0.0 <= stay <= 1.0 and 0.0 <= change <= 1.0
            assert stay + change == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("r,p", [(1, 0.1), (2, 0.5), (3, 0.3), (5, 0.15)])
def test_residual_law_matches_stationary_mixture(r: int, p: float) -> None:
    prior = LengthPrior(kind="geometric" if r == 1 else "negbin", p=p, r=r)
    for d in range(1, 201):
        mixture = np.mean([nbinom.pmf(d - i, i, p) for i in range(1, r + 1)])
        assert prior.residual_mass(d) == pytest.approx(mixture, abs=1e-12)
        step = prior.residual_survival(d - 1) - prior.residual_survival(d)
        assert step == pytest.approx(prior.residual_mass(d), abs=1e-12)


def test_tables_grow_past_the_initial_horizon() -> None:
    prior = LengthPrior(kind="negbin", p=0.1, r=3, horizon=4)
    assert prior.mass(50) == pytest.approx(nbinom.pmf(47, 3, 0.1), rel=1e-12)
    assert prior.survival(50) == pytest.approx(nbinom.sf(47, 3, 0.1), rel=1e-12)


def test_exhausted_survival_forces_a_change() -> None:
    prior = LengthPrior(kind="geometric", p=0.9)
    assert prior.hazard(20, first_segment=False) == (0.0, 1.0)
    assert prior.mass(40) == pytest.approx(0.9 * 0.1**39, rel=1e-9)


def test_domain_errors(geometric: LengthPrior) -> None:
    with pytest.raises(DomainError):
        geometric.mass(0)
    with pytest.raises(DomainError):
        geometric.hazard(0, first_segment=True)
    with pytest.raises(DomainError):
        geometric.survival(-1)


def test_geometric_rejects_r() -> None:
    with pytest.raises(ValidationError):
        LengthPrior(kind="geometric", p=0.3, r=2)
    with pytest.raises(ValidationError):
        PriorConfig(kind="geometric", r=3)


def test_prior_config_builds_the_law() -> None:
    prior = PriorConfig(kind="negbin", p=0.25, r=2).build(horizon=16)
    assert prior.describe() == "negbin(r=2, p=0.25)"
    assert prior.horizon == 16
    assert PriorConfig().build().describe() == "geometric(p=0.01)"


def test_probability_one_gives_unit_segments() -> None:
    prior = LengthPrior(kind="geometric", p=1.0)
    assert prior.mass(1) == 1.0
    assert prior.hazard(1, first_segment=True).change == 1.0


@pytest.mark.slow
@pytest.mark.parametrize("first", [False, True])
def test_sampled_lengths_follow_the_law(first: bool) -> None:
    prior = LengthPrior(kind="negbin", p=0.4, r=2)
    rng = generator(11, Stream.SEGMENTATION)
    draws = 200_000
    lengths = np.array([prior.sample_length(rng, first_segment=first) for _ in range(draws)])
    law = prior.residual_mass if first else prior.mass
    for t in range(1, 12):
        expected = law(t)
        observed = np.count_nonzero(lengths == t) / draws
        se = math.sqrt(expected * (1 - expected) / draws) or 1e-12
        assert abs(observed - expected) <= 4 * se


@pytest.mark.slow
def test_hazard_walk_reproduces_the_length_law() -> None:
    prior = LengthPrior(kind="negbin", p=0.4, r=2)
    rng = np.random.default_rng(5)
    draws = 20_000
    counts: dict[int, int] = {}
    for _ in range(draws):
        age = 1
        while rng.random() >= prior.hazard(age, first_segment=False).change:
            age += 1
        counts[age] = counts.get(age, 0) + 1
    for t in range(1, 10):
        expected = prior.mass(t)
        se = math.sqrt(expected * (1 - expected) / draws) or 1e-12
        assert abs(counts.get(t, 0) / draws - expected) <= 4 * se


@pytest.mark.parametrize(("p", "r"), [(0.3, 1), (0.25, 3)])
def test_residual_cdf_accumulates_residual_mass(p: float, r: int) -> None:
    kind = "geometric" if r == 1 else "negbin"
    prior = LengthPrior(kind=kind, p=p, r=r)
    running = 0.0
    for d in range(1, 60):
        running += prior.residual_mass(d)
        assert prior.residual_cdf(d) == pytest.approx(running, abs=1e-12)
    assert prior.residual_cdf(0) == 0.0
