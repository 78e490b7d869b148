import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from changepoints.core.masked_linalg import (
    CovarianceSpec,
    ObservationMask,
    SegmentStats,
    accumulate,
    date_increment,
    masked_pseudo_inverse,
    padded_log_det,
    padded_pseudo_inverse,
    restricted_log_det,
)
from changepoints.core.shared import ContractError, InputError, SingularityError


@pytest.fixture
def sigma0() -> np.ndarray:
    return np.array([[2.0, 0.5, 0.1], [0.5, 1.5, 0.3], [0.1, 0.3, 1.0]])


@pytest.fixture
def cov(sigma0: np.ndarray) -> CovarianceSpec:
    return CovarianceSpec(sigma0=sigma0)


@pytest.fixture
def h0() -> np.ndarray:
    return np.array([[1.0, 0.0], [0.5, 1.0], [0.0, 2.0]])


def test_mask_from_values_marks_nan_unobserved() -> None:
    mask = ObservationMask.from_values(np.array([1.0, np.nan, 3.0]))
    assert mask.flags == (True, False, True)
    assert mask.observed_count == 2
    assert list(mask.indices) == [0, 2]
    assert ObservationMask.empty(2).is_empty


@pytest.mark.parametrize(
    "flags", [(True, True, True), (True, False, True), (False, True, False)]
)
def test_gathered_inverse_matches_padded_form(
    cov: CovarianceSpec, sigma0: np.ndarray, flags: tuple[bool, ...]
) -> None:
    mask = ObservationMask(flags=flags)
    np.testing.assert_allclose(
        masked_pseudo_inverse(cov, mask),
        padded_pseudo_inverse(sigma0, np.array(flags)),
        atol=1e-12,
    )
    assert restricted_log_det(cov, mask) == pytest.approx(
        padded_log_det(sigma0, np.array(flags)), abs=1e-12
    )


def test_empty_mask_gives_zero_block(cov: CovarianceSpec) -> None:
    mask = ObservationMask.empty(3)
    np.testing.assert_array_equal(masked_pseudo_inverse(cov, mask), np.zeros((3, 3)))
    assert restricted_log_det(cov, mask) == 0.0


def test_pseudo_inverse_is_a_generalized_inverse(cov: CovarianceSpec, sigma0: np.ndarray) -> None:
    flags = np.array([True, False, True])
    projector = np.diag(flags.astype(float))
    block = projector @ sigma0 @ projector
    inverse = masked_pseudo_inverse(cov, ObservationMask.of(flags))
    np.testing.assert_allclose(block @ inverse @ block, block, atol=1e-12)


def test_increment_matches_projector_formulas(
    cov: CovarianceSpec, sigma0: np.ndarray, h0: np.ndarray
) -> None:
    mask = ObservationMask(flags=(True, False, True))
    y = np.array([1.2, np.nan, -0.4])
    increment = date_increment(y, mask, h0, cov, t=3)
    pseudo = padded_pseudo_inverse(sigma0, np.array(mask.flags))
    filled = np.nan_to_num(y)
    np.testing.assert_allclose(increment.a_data, h0.T @ pseudo @ h0, atol=1e-12)
    np.testing.assert_allclose(increment.b, h0.T @ pseudo @ filled, atol=1e-12)
    assert increment.c == pytest.approx(filled @ pseudo @ filled, abs=1e-12)
    assert increment.observed_count == 2


def test_nonfinite_observed_value_names_date_and_component(
    cov: CovarianceSpec, h0: np.ndarray
) -> None:
    with pytest.raises(InputError, match="t=7, component 2"):
        date_increment(
            np.array([1.0, np.inf, 0.0]), ObservationMask.full(3), h0, cov, t=7
        )


def test_unobserved_nan_is_ignored(cov: CovarianceSpec, h0: np.ndarray) -> None:
    increment = date_increment(
        np.array([np.nan, np.nan, np.nan]), ObservationMask.empty(3), h0, cov
    )
    assert increment.is_empty


def test_dimension_mismatch_is_a_contract_error(cov: CovarianceSpec, h0: np.ndarray) -> None:
    with pytest.raises(ContractError):
        date_increment(np.zeros(2), ObservationMask.full(3), h0, cov)
    with pytest.raises(ContractError):
        accumulate(SegmentStats.empty(3), np.zeros(3), ObservationMask.full(3), h0, cov)


def test_singular_block_names_the_date() -> None:
    cov = CovarianceSpec(sigma0=np.array([[1.0, 1.0 - 1e-14], [1.0 - 1e-14, 1.0]]))
    with pytest.raises(SingularityError, match="t=4"):
        date_increment(
            np.zeros(2), ObservationMask.full(2), np.eye(2), cov, t=4
        )
    # One component alone is fine.
    date_increment(
        np.array([0.3, np.nan]), ObservationMask(flags=(True, False)), np.eye(2), cov, t=4
    )


@pytest.mark.parametrize(
    "sigma0",
    [
        np.array([[1.0, 0.2], [0.3, 1.0]]),
        np.array([[1.0, 2.0], [2.0, 1.0]]),
        np.array([[1.0, np.nan], [np.nan, 1.0]]),
        np.ones((2, 3)),
    ],
)
def test_covariance_must_be_symmetric_positive_definite(sigma0: np.ndarray) -> None:
    with pytest.raises(ValidationError):
        CovarianceSpec(sigma0=sigma0)


def test_empty_increment_only_lengthens(cov: CovarianceSpec, h0: np.ndarray) -> None:
    stats = accumulate(
        SegmentStats.empty(2), np.zeros(3), ObservationMask.empty(3), h0, cov
    )
    assert stats.length == 1
    assert stats.is_empty
    np.testing.assert_array_equal(stats.b, np.zeros(2))


@settings(
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_accumulation_is_order_independent(
    cov: CovarianceSpec, h0: np.ndarray, seed: int
) -> None:
    rng = np.random.default_rng(seed)
    ys = rng.normal(size=(5, 3))
    masks = [ObservationMask.of(rng.random(3) < 0.6) for _ in range(5)]

    def total(order: np.ndarray) -> SegmentStats:
        stats = SegmentStats.empty(2)
        for t in order:
            stats = accumulate(stats, ys[t], masks[t], h0, cov)
        return stats

    forward, shuffled = total(np.arange(5)), total(rng.permutation(5))
    np.testing.assert_allclose(forward.a_data, shuffled.a_data, atol=1e-12)
    np.testing.assert_allclose(forward.b, shuffled.b, atol=1e-12)
    assert forward.c == pytest.approx(shuffled.c, abs=1e-12)
    assert forward.trace_pi == shuffled.trace_pi
    assert forward.logdet_sum == pytest.approx(shuffled.logdet_sum, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_restricted_log_det_ignores_component_order(seed: int) -> None:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(4, 4))
    sigma0 = a @ a.T + 0.5 * np.eye(4)
    sigma0 = 0.5 * (sigma0 + sigma0.T)
    flags = rng.random(4) < 0.6
    order = rng.permutation(4)

    original = restricted_log_det(CovarianceSpec(sigma0=sigma0), ObservationMask.of(flags))
    permuted = restricted_log_det(
        CovarianceSpec(sigma0=sigma0[np.ix_(order, order)]), ObservationMask.of(flags[order])
    )

    assert permuted == pytest.approx(original, abs=1e-10)
    observed = np.flatnonzero(flags)
    assert original == pytest.approx(
        float(np.linalg.slogdet(sigma0[np.ix_(observed, observed)])[1]) if observed.size else 0.0,
        abs=1e-10,
    )
