"""Averages of the sign products along a word, their Monte Carlo behavior
under the biased measure, and the exact combinatorics of finite-length
level sets.

The running average A_m = (1/m) sum_{k<=m} xi_k(x) is the object whose
almost-sure limit is theta under the biased measure; its level sets at
finite length n are counted exactly by a free-coordinate bijection, and
the normalized log-counts reproduce the dimension spectrum numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .measure import NullCylinderError, RieszParams, log2_cylinder_mass
from .rng import substream
from .words import SignWord, as_word, xi_sequence

_ENUMERATION_MAX_BITS = 26


@dataclass(frozen=True, eq=False)
class AverageTrace:
    """Running averages A_m = (1/m) sum_{k<=m} xi_k for m = 1..M.

    ``partial_sums`` keeps the integer sums exactly; the float averages
    are derived from them.
    """

    ell: int
    word_length: int
    partial_sums: np.ndarray

    @property
    def partial_averages(self) -> np.ndarray:
        m = self.partial_sums.size
        return self.partial_sums / np.arange(1, m + 1, dtype=np.float64)

    @property
    def final_average(self) -> float:
        m = self.partial_sums.size
        return float(self.partial_sums[-1]) / m


@dataclass(frozen=True)
class LlnReport:
    """Aggregate of final averages over independent sampled words."""

    trials: int
    n: int
    theta: float
    mean_of_averages: float
    rms_deviation: float
    max_deviation: float


def _xi_of_sign_row(row: np.ndarray, ell: int) -> np.ndarray:
    """xi_1..xi_m from an int8 sign array (sampler output layout)."""
    m = row.size // ell
    ks = np.arange(1, m + 1)
    acc = row[ks - 1].copy()
    for j in range(2, ell + 1):
        acc *= row[j * ks - 1]
    return acc


def multiple_average(word, ell: int) -> AverageTrace:
    """All running averages of xi_1..xi_M along the word, M = len // ell."""
    word = as_word(word)
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if word.length < ell:
        raise ValueError(
            f"word of length {word.length} is shorter than ell = {ell}"
        )
    sums = np.cumsum(xi_sequence(word, ell), dtype=np.int64)
    return AverageTrace(ell, word.length, sums)


def lln_experiment(params: RieszParams, n: int, trials: int, seed: int) -> LlnReport:
    """Sample ``trials`` words of length ell*n and aggregate their final
    averages A_n.

    Trial i draws from the substream (seed, i), so the report does not
    depend on how trials are batched or distributed.  Under the measure
    the averages concentrate at theta with variance (1 - theta^2)/n.
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be >= 1")
    length = params.ell * n
    finals = np.empty(trials, dtype=np.float64)
    for i in range(trials):
        # one substream per trial, matching sample()'s stream layout
        u = substream(seed, i).random(length)[None, :]
        signs = kernels.sample_signs(u, params.ell, params.theta)[0]
        xs = _xi_of_sign_row(signs, params.ell)
        finals[i] = float(xs.sum(dtype=np.int64)) / n
    dev = finals - params.theta
    return LlnReport(
        trials=trials,
        n=n,
        theta=params.theta,
        mean_of_averages=float(finals.mean()),
        rms_deviation=float(np.sqrt(np.mean(dev * dev))),
        max_deviation=float(np.abs(dev).max()),
    )


def local_dimension_estimate(params: RieszParams, word) -> float:
    """log mass over log diameter of the word's cylinder,
    log2 P(I_n) / (-n).

    For words typical of the measure this converges to
    1 - 1/ell + H((1+theta)/2)/ell; at theta = 0 it is exactly 1 for
    every word.
    """
    word = as_word(word)
    if word.length < params.ell:
        raise ValueError("word must be at least ell long")
    lm = log2_cylinder_mass(params, word)
    if lm == -math.inf:
        raise NullCylinderError("word's cylinder has measure zero")
    return lm / -word.length


def level_set_count(n: int, ell: int, s: int) -> int:
    """Number of length-n sign words with sum_{k<=m} xi_k = s, m = n // ell.

    The n - m coordinates at positions not of the form ell*k are free, and
    (xi_1..xi_m) determines the rest via x_{ell*k} = xi_k * x_k ... x_{(ell-1)k}
    in increasing k; so the count is C(m, (m+s)/2) * 2^(n-m).  Out-of-range
    or parity-violating s gives 0.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= ell <= n:
        raise ValueError("need 1 <= ell <= n")
    m = n // ell
    if abs(s) > m or (m + s) % 2:
        return 0
    return math.comb(m, (m + s) // 2) << (n - m)


def enumerate_level_set_counts(n: int, ell: int) -> dict[int, int]:
    """Exhaustive histogram {s: count} over all 2^n words.

    Brute-force oracle for :func:`level_set_count`; capped at n <= 26.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= ell <= n:
        raise ValueError("need 1 <= ell <= n")
    if n > _ENUMERATION_MAX_BITS:
        raise ValueError(f"enumeration budget is n <= {_ENUMERATION_MAX_BITS}")
    m = n // ell
    hist = kernels.xi_sum_histogram(n, ell)
    return {s - m: int(hist[s]) for s in range(2 * m + 1) if hist[s]}


def empirical_spectrum(n: int, ell: int) -> list[tuple[float, float]]:
    """Pairs (s/m, log2(level_set_count(n, ell, s)) / n) over admissible s.

    Large-n safe: the binomial is evaluated through log-gamma, no big
    integers are built.  Converges pointwise to the dimension spectrum as
    n grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= ell <= n:
        raise ValueError("need 1 <= ell <= n")
    m = n // ell
    ln2 = math.log(2.0)
    lgm = math.lgamma(m + 1)
    out = []
    for j in range(m + 1):
        s = 2 * j - m
        log2_binom = (lgm - math.lgamma(j + 1) - math.lgamma(m - j + 1)) / ln2
        out.append((s / m, (log2_binom + (n - m)) / n))
    return out
