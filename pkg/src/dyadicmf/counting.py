"""Exact counting of binary words avoiding a one at both positions l and
2l, via the doubling-chain decomposition of {1..n}.

Words are integer bit patterns (bit i-1 holds x_i).  The constraint acts
independently along each chain {q, 2q, 4q, ...} for odd q, where it is
the no-two-adjacent-ones condition; a chain of length L therefore
contributes a factor a_L, the shifted Fibonacci count.  Grouping chains
by length gives the closed product formula, and its normalized log
converges to the box dimension of the infinite constrained set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .dimensions import fibonacci

ENUMERATION_MAX_BITS = 26


@dataclass(frozen=True)
class ChainDecomposition:
    """Partition of {1..n} into the chains {q * 2^t} for odd q.

    ``counts`` holds n_0 > n_1 > ... > n_m (n_k = floor(n/2^(k+1) + 1/2)):
    n_k is both the size of the k-th column {2^k * odd} and the number of
    chains of length at least k+1.  ``chains`` maps each odd q to its
    chain, ascending.
    """

    n: int
    m: int
    counts: tuple[int, ...]
    chains: dict[int, tuple[int, ...]]

    def chain_length(self, q: int) -> int:
        return len(self.chains[q])


def chain_decomposition(n: int) -> ChainDecomposition:
    """Decompose {1..n}; m = floor(log2 n), n_k by pure integer arithmetic
    as (n + 2^k) // 2^(k+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n.bit_length() - 1
    counts = tuple((n + (1 << k)) >> (k + 1) for k in range(m + 1))
    chains: dict[int, tuple[int, ...]] = {}
    for q in range(1, n + 1, 2):
        links = []
        v = q
        while v <= n:
            links.append(v)
            v <<= 1
        chains[q] = tuple(links)
    return ChainDecomposition(n, m, counts, chains)


def _grouped_product(counts: tuple[int, ...], fib: list[int]) -> int:
    """The closed product a_{m+1}^{n_m} * prod_k a_k^{n_{k-1} - n_k} from a
    column-count sequence (injectable so tests can feed a broken one)."""
    m = len(counts) - 1
    result = fib[m + 1] ** counts[m]
    for k in range(1, m + 1):
        result *= fib[k] ** (counts[k - 1] - counts[k])
    return result


def _chain_length_histogram(n: int) -> np.ndarray:
    """hist[L] = number of odd q <= n whose chain has length L, found by
    enumerating the odd q directly (the cross-check route, independent of
    the n_k closed form)."""
    q = np.arange(1, n + 1, 2, dtype=np.int64)
    d = n // q
    lengths = np.floor(np.log2(d.astype(np.float64))).astype(np.int64) + 1
    # snap float rounding back to the exact 2^(L-1) <= d < 2^L bracket
    lengths -= (np.int64(1) << (lengths - 1)) > d
    lengths += (np.int64(1) << lengths) <= d
    if np.any(((np.int64(1) << (lengths - 1)) > d) | ((np.int64(1) << lengths) <= d)):
        raise RuntimeError("chain length bracket failed")
    return np.bincount(lengths)


def count_exact(n: int) -> int:
    """Exact number of length-n bit words with x_l * x_{2l} = 0 whenever
    2l <= n.

    Computes the grouped closed-form product and the per-chain product
    over odd q, and insists they agree; the redundancy guards the n_k
    arithmetic against off-by-one drift.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n.bit_length() - 1
    counts = tuple((n + (1 << k)) >> (k + 1) for k in range(m + 1))
    fib = fibonacci(m + 1)
    grouped = _grouped_product(counts, fib)
    hist = _chain_length_histogram(n)
    per_chain = 1
    for length, mult in enumerate(hist.tolist()):
        if mult:
            per_chain *= fib[length] ** mult
    if grouped != per_chain:
        raise RuntimeError(
            f"count routes disagree at n={n}: {grouped} != {per_chain}"
        )
    return grouped


def count_brute_force(n: int) -> int:
    """The same count by enumerating all 2^n words; budget n <= 26."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_MAX_BITS:
        raise ValueError(f"enumeration budget is n <= {ENUMERATION_MAX_BITS}")
    return int(kernels.count_constrained(n))


def normalized_log_count(n: int) -> float:
    """log2(count_exact(n)) / n without building the big integer:
    chains grouped by length, O(log n) after the Fibonacci table.

    Converges to the box dimension 0.8242936... as n grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n.bit_length() - 1
    fib = fibonacci(m + 1)
    counts = [(n + (1 << k)) >> (k + 1) for k in range(m + 1)]
    counts.append(0)
    total = 0.0
    for k in range(m + 1):
        total += (counts[k] - counts[k + 1]) * math.log2(fib[k + 1])
    return total / n
