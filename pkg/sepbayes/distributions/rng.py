"""Seedable, independently usable random streams."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class RngStream:
    """A PCG64 generator keyed by (seed, stream id).

    Equal keys replay the same sequence. Different stream ids give
    statistically independent streams via SeedSequence spawn keys, so chains
    can each own one without coordination. A stream must not be shared across
    threads.
    """

    seed: int
    stream_id: int = 0
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if self.seed < 0 or self.stream_id < 0:
            raise ValueError(f"Seed and stream id must be nonnegative, got {self.seed}, {self.stream_id}")
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def spawn(self, stream_id: int) -> "RngStream":
        """Another stream under the same seed."""
        return RngStream(seed=self.seed, stream_id=stream_id)

    def uniform(self, size=None):
        return self.generator.random(size)

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def standard_exponential(self, size=None):
        return self.generator.standard_exponential(size)

    def standard_gamma(self, shape, size=None):
        return self.generator.standard_gamma(shape, size)
