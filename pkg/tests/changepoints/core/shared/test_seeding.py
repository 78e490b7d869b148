import numpy as np
import pytest

from changepoints.core.shared import ContractError, Stream, generator


def test_same_seed_and_stream_reproduce() -> None:
    a = generator(42, Stream.NOISE).random(5)
    b = generator(42, Stream.NOISE).random(5)
    np.testing.assert_array_equal(a, b)


def test_streams_are_distinct() -> None:
    a = generator(42, Stream.NOISE).random(5)
    b = generator(42, Stream.MASKS).random(5)
    assert not np.array_equal(a, b)


def test_seed_must_fit_in_64_bits() -> None:
    generator(2**64 - 1, Stream.SEGMENTATION)
    with pytest.raises(ContractError):
        generator(2**64, Stream.SEGMENTATION)
    with pytest.raises(ContractError):
        generator(-1, Stream.SEGMENTATION)
