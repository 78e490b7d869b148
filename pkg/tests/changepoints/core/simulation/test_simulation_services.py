import numpy as np
import pytest
from pydantic import ValidationError

from changepoints.core.emission import EmissionConfig
from changepoints.core.length_prior import LengthPrior
from changepoints.core.shared import ContractError, Stream, generator
from changepoints.core.simulation import SimulationConfig, SimulationServices


@pytest.fixture
def emission() -> EmissionConfig:
    return EmissionConfig(d=2, delta2=[25.0, 25.0], sigma2=0.5)


def test_same_seed_reproduces_the_series(emission: EmissionConfig) -> None:
    services = SimulationServices(
        LengthPrior(kind="geometric", p=0.1), emission, SimulationConfig(activation_prob=0.7)
    )
    ys, truth = services.simulate(50, seed=123)
    again, truth_again = services.simulate(50, seed=123)
    np.testing.assert_array_equal(np.isnan(ys), np.isnan(again))
    np.testing.assert_array_equal(np.nan_to_num(ys), np.nan_to_num(again))
    assert truth == truth_again
    other, _ = services.simulate(50, seed=124)
    assert not np.array_equal(np.nan_to_num(ys), np.nan_to_num(other))


def test_truth_partitions_the_series(emission: EmissionConfig) -> None:
    services = SimulationServices(LengthPrior(kind="negbin", p=0.2, r=2), emission)
    ys, truth = services.simulate(200, seed=7)
    assert ys.shape == (200, 2)
    assert truth.changepoints[0] == 1
    assert [s.start for s in truth.segments] == list(truth.changepoints)
    assert truth.segments[-1].end == 200
    for before, after in zip(truth.segments, truth.segments[1:]):
        assert after.start == before.end + 1
    assert all(s.sigma2 == 0.5 for s in truth.segments)
    assert not np.isnan(ys).any()


def test_unit_probability_makes_every_date_a_changepoint(emission: EmissionConfig) -> None:
    services = SimulationServices(LengthPrior(kind="geometric", p=1.0), emission)
    _, truth = services.simulate(12, seed=1)
    assert truth.changepoints == tuple(range(1, 13))


def test_zero_activation_hides_everything(emission: EmissionConfig) -> None:
    services = SimulationServices(
        LengthPrior(kind="geometric", p=0.1), emission, SimulationConfig(activation_prob=0.0)
    )
    ys, _ = services.simulate(20, seed=3)
    assert np.isnan(ys).all()


def test_per_component_activation(emission: EmissionConfig) -> None:
    services = SimulationServices(
        LengthPrior(kind="geometric", p=0.1),
        emission,
        SimulationConfig(activation_prob=(1.0, 0.0)),
    )
    ys, _ = services.simulate(30, seed=3)
    assert not np.isnan(ys[:, 0]).any()
    assert np.isnan(ys[:, 1]).all()
    with pytest.raises(ContractError):
        SimulationServices(
            LengthPrior(kind="geometric", p=0.1),
            emission,
            SimulationConfig(activation_prob=(1.0, 0.5, 0.5)),
        ).simulate(5, seed=1)


def test_invgamma_draws_a_variance_per_segment() -> None:
    config = EmissionConfig(d=1, noise="invgamma", nu=4.0, gamma=2.0)
    services = SimulationServices(LengthPrior(kind="geometric", p=0.2), config)
    _, truth = services.simulate(100, seed=11)
    variances = {s.sigma2 for s in truth.segments}
    assert len(variances) == len(truth.segments) > 1


def test_first_gap_uses_the_residual_law() -> None:
    prior = LengthPrior(kind="negbin", p=0.5, r=3)
    services = SimulationServices(prior, EmissionConfig(d=1))
    rng = generator(99, Stream.SEGMENTATION)
    # Under g a first segment of one date is impossible (support starts at r);
    # under g0 it has mass 1/6.
    hits = sum(services.sample_changepoints(2, rng) == (1, 2) for _ in range(3000))
    assert 400 < hits < 600


def test_activation_probability_must_be_a_probability() -> None:
    with pytest.raises(ValidationError):
        SimulationConfig(activation_prob=1.5)
