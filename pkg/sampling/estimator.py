"""
Monte-Carlo estimates with reproducible chunked reduction.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from typing import Callable, Dict, List, Tuple, Union

import numpy as np

from config import CHUNK_SIZE, DEFAULT_WORKERS, EXACT_RTOL, TOLERANCE_SIGMAS
from numkit.errors import DomainError, NonFiniteValue
from sampling.rng import RngStream

logger = logging.getLogger(__name__)

Number = Union[int, float]


@dataclass(frozen=True)
class McEstimate:
    """
    A Monte-Carlo value with its standard error.

    Arithmetic with plain numbers scales the estimate; arithmetic between two
    estimates propagates first-order errors as if they were independent.
    """

    mean: float
    stderr: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 2:
            raise DomainError(f"an estimate needs at least 2 samples, got {self.samples}")
        if not self.stderr >= 0.0:
            raise DomainError(f"stderr must be nonnegative, got {self.stderr}")
        object.__setattr__(self, "mean", float(self.mean))
        object.__setattr__(self, "stderr", float(self.stderr))

    @property
    def relative_stderr(self) -> float:
        if self.mean == 0.0:
            return 0.0 if self.stderr == 0.0 else math.inf
        return self.stderr / abs(self.mean)

    def _with(self, mean: float, stderr: float, other: "McEstimate" = None) -> "McEstimate":
        samples = self.samples if other is None else min(self.samples, other.samples)
        return McEstimate(mean, stderr, samples, self.seed)

    def __mul__(self, other):
        if isinstance(other, McEstimate):
            mean = self.mean * other.mean
            rel = math.hypot(self.relative_stderr, other.relative_stderr)
            return self._with(mean, abs(mean) * rel, other)
        return self._with(self.mean * other, self.stderr * abs(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, McEstimate):
            mean = self.mean / other.mean
            rel = math.hypot(self.relative_stderr, other.relative_stderr)
            return self._with(mean, abs(mean) * rel, other)
        return self._with(self.mean / other, self.stderr / abs(other))

    def __rtruediv__(self, other: Number):
        mean = other / self.mean
        return self._with(mean, abs(mean) * self.relative_stderr)

    def __pow__(self, exponent: Number):
        mean = self.mean ** exponent
        return self._with(mean, abs(mean) * abs(exponent) * self.relative_stderr)

    def tolerance(self, sigmas: float = TOLERANCE_SIGMAS) -> float:
        """Absolute half-width used for every comparison against this estimate."""
        return sigmas * self.stderr + EXACT_RTOL * abs(self.mean)

    def within(self, expected: float, sigmas: float = TOLERANCE_SIGMAS) -> bool:
        return abs(self.mean - expected) <= self.tolerance(sigmas) + EXACT_RTOL * abs(expected)

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def value_of(x: Union[McEstimate, Number]) -> float:
    """Mean of an estimate, or the number itself."""
    return x.mean if isinstance(x, McEstimate) else float(x)


def stderr_of(x: Union[McEstimate, Number]) -> float:
    """Standard error of an estimate, zero for an exact number."""
    return x.stderr if isinstance(x, McEstimate) else 0.0


def _chunks(samples: int, chunk_size: int) -> List[Tuple[int, int]]:
    count = -(-samples // chunk_size)
    return [(index, min(chunk_size, samples - index * chunk_size)) for index in range(count)]


def chunked_estimate(
    draw: Callable[[np.random.Generator, int], np.ndarray],
    f: Callable[[np.ndarray], np.ndarray],
    samples: int,
    rng: RngStream,
    chunk_size: int = CHUNK_SIZE,
    workers: int = DEFAULT_WORKERS,
) -> McEstimate:
    """
    Average f over `samples` draws, chunk by chunk.

    Chunk i draws from rng.generator(i), so the result depends only on
    (rng, samples, chunk_size); the chunk statistics are merged in chunk
    order, which makes the worker count irrelevant.

    Args:
        draw: draw(generator, count) -> batch of `count` sample points.
        f: Vectorized integrand, batch -> array of `count` values.
        samples: Total number of draws (>= 2).
        rng: Stream the chunks are derived from.
        chunk_size: Draws per chunk.
        workers: Threads evaluating chunks concurrently.

    Returns:
        McEstimate of E f.

    Raises:
        NonFiniteValue: If f returns NaN or an infinite value.
    """
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples}")
    if chunk_size < 1:
        raise DomainError(f"chunk_size must be positive, got {chunk_size}")

    def run(chunk: Tuple[int, int]) -> Tuple[int, float, float]:
        index, count = chunk
        values = np.asarray(f(draw(rng.generator(index), count)), dtype=float).reshape(-1)
        if values.shape[0] != count:
            raise DomainError(f"integrand returned {values.shape[0]} values for {count} points")
        if not np.all(np.isfinite(values)):
            raise NonFiniteValue(f"integrand returned a non-finite value in chunk {index}")
        mean = float(values.mean())
        return count, mean, float(np.sum((values - mean) ** 2))

    chunks = _chunks(samples, chunk_size)
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run, chunks))
    else:
        stats = [run(chunk) for chunk in chunks]

    # Ordered pairwise merge of (count, mean, M2)
    total, mean, m2 = stats[0]
    for count, chunk_mean, chunk_m2 in stats[1:]:
        delta = chunk_mean - mean
        merged = total + count
        mean += delta * count / merged
        m2 += chunk_m2 + delta * delta * total * count / merged
        total = merged

    stderr = math.sqrt(max(m2, 0.0) / (total - 1) / total)
    logger.debug(f"estimate over {total} samples in {len(chunks)} chunks: {mean:.6g} ± {stderr:.2g}")
    return McEstimate(mean=mean, stderr=stderr, samples=total, seed=rng.seed)
