"""Vectorized numpy implementation of the hot kernels.

Used when the compiled extension is unavailable (or forced via
``DYADICMF_KERNELS=numpy``).  Every function here must produce output
bit-identical to its twin in ``_core.pyx``; the sampler in particular
evaluates the same IEEE expressions in the same order, only grouped by
dependency level instead of walking positions one at a time.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

_CHUNK = 1 << 22  # enumeration block size, keeps peak memory modest


@lru_cache(maxsize=16)
def _dependency_levels(n: int, ell: int) -> tuple[np.ndarray, ...]:
    """Positions ell*k <= n grouped so that each group's inputs
    (j*k for j < ell) are settled by the earlier groups plus the free
    coordinates.  Empty for ell == 1 (no inputs to wait for)."""
    if ell == 1 or n < ell:
        return ()
    known = np.ones(n + 1, dtype=bool)
    multiples = np.arange(ell, n + 1, ell, dtype=np.int64)
    known[multiples] = False
    levels = []
    remaining = multiples
    while remaining.size:
        ks = remaining // ell
        ready = known[ks]
        for j in range(2, ell):
            ready = ready & known[j * ks]
        settled = remaining[ready]
        if not settled.size:  # cannot happen: smallest remaining is always ready
            raise RuntimeError("dependency resolution stalled")
        levels.append(settled)
        known[settled] = True
        remaining = remaining[~ready]
    return tuple(levels)


def sample_signs(u: np.ndarray, ell: int, theta: float) -> np.ndarray:
    """Turn uniform draws into sign words, one row per word.

    Position i (1-indexed) is a fair sign when i is not a multiple of ell;
    position ell*k flips +1 with probability 0.5 + 0.5*theta*t where t is
    the product x_k ... x_{(ell-1)k} already decided.  Row by row this is
    exactly the sequential conditional sampler.
    """
    u = np.ascontiguousarray(u, dtype=np.float64)
    if u.ndim != 2:
        raise ValueError("u must be 2-d (words, positions)")
    rows, n = u.shape
    out = np.empty((rows, n), dtype=np.int8)
    if n == 0:
        return out
    if ell == 1:
        p = 0.5 + 0.5 * theta
        np.subtract(
            np.int8(1), np.int8(2) * (u >= p).astype(np.int8), out=out
        )
        return out
    pos = np.arange(1, n + 1)
    free = pos[pos % ell != 0] - 1
    out[:, free] = np.int8(1) - np.int8(2) * (u[:, free] >= 0.5).astype(np.int8)
    for level in _dependency_levels(n, ell):
        idx = level - 1
        ks = level // ell
        t = out[:, ks - 1].astype(np.float64)
        for j in range(2, ell):
            t *= out[:, j * ks - 1]
        p = 0.5 + 0.5 * theta * t
        out[:, idx] = np.int8(1) - np.int8(2) * (u[:, idx] >= p).astype(np.int8)
    return out


def cylinder_mass_table(n: int, ell: int, theta: float) -> np.ndarray:
    """Masses of all 2^n cylinders of depth n, indexed by bit pattern
    (bit i-1 set means x_i = -1)."""
    size = 1 << n
    base = math.ldexp(1.0, -n)
    mass = np.full(size, base, dtype=np.float64)
    fplus = 1.0 + theta
    fminus = 1.0 - theta
    v = np.arange(size, dtype=np.uint64)
    for k in range(1, n // ell + 1):
        acc = (v >> np.uint64(k - 1)) & np.uint64(1)
        for j in range(2, ell + 1):
            acc = acc ^ ((v >> np.uint64(j * k - 1)) & np.uint64(1))
        mass *= np.where(acc.astype(bool), fminus, fplus)
    return mass


def count_constrained(n: int) -> int:
    """Number of n-bit words with no 1 at both l and 2l, by enumeration."""
    total = 0
    size = 1 << n
    one = np.uint64(1)
    for start in range(0, size, _CHUNK):
        v = np.arange(start, min(start + _CHUNK, size), dtype=np.uint64)
        ok = np.ones(v.shape, dtype=bool)
        for l in range(1, n // 2 + 1):
            ok &= ((v >> np.uint64(l - 1)) & (v >> np.uint64(2 * l - 1)) & one) == 0
        total += int(np.count_nonzero(ok))
    return total


def xi_sum_histogram(n: int, ell: int) -> np.ndarray:
    """Histogram of sum_k xi_k over all 2^n words; entry [s + m] counts the
    words with xi-sum s, where m = n // ell."""
    m = n // ell
    size = 1 << n
    hist = np.zeros(2 * m + 1, dtype=np.int64)
    one = np.uint64(1)
    for start in range(0, size, _CHUNK):
        v = np.arange(start, min(start + _CHUNK, size), dtype=np.uint64)
        ssum = np.full(v.shape, m, dtype=np.int64)  # offset by +m up front
        for k in range(1, m + 1):
            acc = (v >> np.uint64(k - 1)) & one
            for j in range(2, ell + 1):
                acc = acc ^ ((v >> np.uint64(j * k - 1)) & one)
            ssum += 1 - 2 * acc.astype(np.int64)
        hist += np.bincount(ssum, minlength=2 * m + 1)
    return hist
