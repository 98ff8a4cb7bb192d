"""Reproducible random streams.

Randomness comes from NumPy's Philox-4x64 counter-based generator.  The key
is the ``(seed, stream_id)`` pair and the second counter word carries a
block index, so block ``k`` of a stream is a pure function of
``(seed, stream_id, k)``.  Monte Carlo work is chunked into fixed-size
blocks, which makes outage counts independent of how many workers consume
the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RandomStream:
    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not 0 <= int(v) <= _MASK64:
                raise ValueError(f"{name} must fit in an unsigned 64-bit integer")

    def generator(self, block: int = 0) -> np.random.Generator:
        key = np.array([self.seed, self.stream_id], dtype=np.uint64)
        counter = np.array([0, block, 0, 0], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key, counter=counter))

    def substream(self, stream_id: int) -> "RandomStream":
        return RandomStream(self.seed, stream_id)


def as_generator(rng) -> np.random.Generator:
    """Accept a Generator or a RandomStream (block 0)."""
    if isinstance(rng, RandomStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RandomStream or numpy Generator, got {type(rng)!r}")
