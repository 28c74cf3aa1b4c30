"""
Counter-based random streams.

A stream is identified by (seed, stream_id). Every chunk of work draws from
its own Philox generator keyed by a SeedSequence spawned from
(seed, stream_id, chunk), so no coordination is needed between workers and
the same triple always yields the same numbers on every platform.
"""

from dataclasses import dataclass

import numpy as np

from numkit.errors import DomainError

_U64 = 1 << 64


@dataclass(frozen=True)
class RngStream:
    """A reproducible random stream (seed, stream_id), both unsigned 64-bit."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or not 0 <= value < _U64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    def generator(self, chunk: int = 0) -> np.random.Generator:
        """Philox generator for one chunk of this stream."""
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id, int(chunk)))
        return np.random.Generator(np.random.Philox(sequence))

    def derive(self, index: int) -> "RngStream":
        """Child stream for an independent sub-task (a sweep point, a trial)."""
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id, _U64 - 1, int(index)))
        child_id = int(sequence.generate_state(1, dtype=np.uint64)[0])
        return RngStream(self.seed, child_id)
