from __future__ import annotations

from enum import IntEnum

import numpy as np

from .errors import ContractError


class Stream(IntEnum):
    """Children of the run seed, in spawn order.

    The order is part of the reproducibility contract: appending new
    streams is fine, reordering changes every seeded output.
    """

    SEGMENTATION = 0
    PARAMETERS = 1
    NOISE = 2
    MASKS = 3
    POSTERIOR_SAMPLING = 4


def generator(seed: int, stream: Stream) -> np.random.Generator:
    """PCG64 generator for one named stream of a 64-bit run seed."""
    if not 0 <= seed < 2**64:
        raise ContractError(f"Seed must fit in 64 unsigned bits, got {seed}")
    children = np.random.SeedSequence(seed).spawn(len(Stream))
    return np.random.Generator(np.random.PCG64(children[stream]))
