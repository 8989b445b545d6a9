"""Counter-based randomness: Philox substreams keyed by (seed, stream).

Every stochastic routine in the package draws from
``substream(seed, stream)``; one uniform double is consumed per
coordinate, so outputs are reproducible bit-for-bit across runs,
platforms and kernel backends, and a word sampled at length n is a prefix
of the word sampled at any larger length under the same (seed, stream).
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for the given 64-bit seed and stream index."""
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
