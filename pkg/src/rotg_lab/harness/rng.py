"""Counter-based input sampling.

Sample ``i`` of seed ``k`` is drawn from Philox block ``i`` under key ``k``:
the first two 64-bit words of the block become two open-interval uniforms,
mapped to standard normals through the inverse normal CDF. The pair is a
pure function of ``(seed, index)``, so any partition of an index range into
chunks reproduces the same stream.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy.special import ndtri

__all__ = ["Distribution", "MAX_SEED", "sample_block", "sample_inputs"]

MAX_SEED = 2**64 - 1
_WORDS_PER_BLOCK = 4


class Distribution(str, enum.Enum):
    STANDARD_NORMAL = "standard-normal"


def _check_seed(seed: int) -> None:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")


def _open_uniform(words: np.ndarray) -> np.ndarray:
    # top 53 bits, centred in their cell: strictly inside (0, 1)
    return ((words >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def sample_block(
    seed: int,
    start: int,
    count: int,
    distribution: Distribution | str = Distribution.STANDARD_NORMAL,
) -> tuple[np.ndarray, np.ndarray]:
    """Inputs ``(f, g)`` for indices ``start .. start+count-1`` as float64 arrays."""
    _check_seed(seed)
    if start < 0 or count < 0:
        raise ValueError("start and count must be non-negative")
    Distribution(distribution)
    if count == 0:
        empty = np.empty(0, dtype=np.float64)
        return empty, empty.copy()
    # Philox(counter=i) emits block i as its first output block.
    raw = np.random.Philox(key=seed, counter=start).random_raw(_WORDS_PER_BLOCK * count)
    words = raw.reshape(count, _WORDS_PER_BLOCK)
    f = ndtri(_open_uniform(words[:, 0]))
    g = ndtri(_open_uniform(words[:, 1]))
    return f, g


def sample_inputs(seed: int, index: int) -> tuple[float, float]:
    f, g = sample_block(seed, index, 1)
    return float(f[0]), float(g[0])
