"""The biased product measure on sign sequences: exact cylinder masses, a
sequential exact sampler, Fourier coefficients, and expectations of power
series in the sign products.

For multiplicity ell >= 1 and level theta in [-1, 1], the measure weights
the n-cylinder of a word x by

    2^-n * prod_{k <= n // ell} (1 + theta * xi_k(x)),

where xi_k(x) = x_k x_{2k} ... x_{ell*k}.  theta = 0 is the uniform
(Haar) measure.  Under this measure the coordinates at positions not
divisible by ell are independent fair signs, and the xi_k are independent
with mean theta; the sampler exploits that factorization, so every prefix
marginal is exact rather than Markov-approximate.

theta = +-1 is degenerate: cylinders whose forced factor vanishes have
mass exactly 0, the sampler never enters them, and conditioning on one
raises :class:`NullCylinderError`.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

from . import _kernels as kernels
from .rng import substream
from .words import (
    DyadicCharacter,
    SignWord,
    _as_character,
    as_word,
    xi_character_index,
    xi_sequence,
)

MAX_TABLE_BITS = 24  # full-table enumerations cap at 2^24 cylinders

_SAMPLE_BLOCK = 1 << 22  # uniforms held in memory at once when batching


class NullCylinderError(ValueError):
    """Conditioning on a cylinder of measure zero."""


@dataclass(frozen=True)
class RieszParams:
    """Multiplicity ell >= 1 and level theta in [-1, 1]."""

    ell: int
    theta: float

    def __post_init__(self):
        try:
            object.__setattr__(self, "ell", operator.index(self.ell))
        except TypeError:
            raise ValueError(f"ell must be an integer, got {self.ell!r}") from None
        if self.ell < 1:
            raise ValueError(f"ell must be >= 1, got {self.ell}")
        object.__setattr__(self, "theta", float(self.theta))
        if not -1.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")


@dataclass(frozen=True)
class PowerSeriesCoeffs:
    """Coefficients g_0, g_1, ... of a power series with absolutely summable
    coefficients, plus a bound on the discarded tail sum_{n>K} |g_n|."""

    coeffs: tuple[float, ...]
    truncation_bound: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        if any(not math.isfinite(c) for c in self.coeffs):
            raise ValueError("coefficients must be finite")
        if not self.truncation_bound >= 0.0:
            raise ValueError("truncation_bound must be >= 0")


class Expectation(NamedTuple):
    value: float
    error_bound: float


def cylinder_mass(params: RieszParams, prefix) -> float:
    """Exact mass of the cylinder identified by ``prefix`` (a SignWord or
    word string).

    Direct product evaluation; use :func:`log2_cylinder_mass` for prefixes
    long enough that 2^-n underflows (n around 1075 at theta = 0).
    """
    prefix = as_word(prefix)
    n = prefix.length
    signs = xi_sequence(prefix, params.ell)
    prod = 1.0
    for s in signs.tolist():
        prod *= 1.0 + params.theta * s
    return math.ldexp(prod, -n)


def log2_cylinder_mass(params: RieszParams, prefix) -> float:
    """log2 of the cylinder mass, -inf when some factor vanishes.

    Works term-by-term in log space, so prefixes of length 10^7 are fine.
    """
    prefix = as_word(prefix)
    n = prefix.length
    theta = params.theta
    signs = xi_sequence(prefix, params.ell)
    npos = int(np.count_nonzero(signs == 1))
    nneg = int(signs.size) - npos
    total = float(-n)
    if npos:
        if theta == -1.0:
            return -math.inf
        total += npos * math.log2(1.0 + theta)
    if nneg:
        if theta == 1.0:
            return -math.inf
        total += nneg * math.log2(1.0 - theta)
    return total


def _require_positive_mass(params: RieszParams, prefix: SignWord) -> None:
    if abs(params.theta) == 1.0 and prefix.length >= params.ell:
        bad = -1 if params.theta == 1.0 else 1
        if bool(np.any(xi_sequence(prefix, params.ell) == bad)):
            raise NullCylinderError(
                "prefix has measure zero under these parameters"
            )


def conditional_prob_next(params: RieszParams, prefix, candidate: int) -> float:
    """Probability that the coordinate after ``prefix`` equals ``candidate``.

    Equals the mass ratio of the extended to the current cylinder: 1/2
    when the next position is not a multiple of ell, otherwise
    (1 + theta * candidate * x_k x_{2k} ... x_{(ell-1)k}) / 2 for the new
    position ell*k.  The two candidate probabilities sum to 1 exactly.
    """
    prefix = as_word(prefix)
    if candidate not in (1, -1):
        raise ValueError(f"candidate must be +1 or -1, got {candidate!r}")
    _require_positive_mass(params, prefix)
    nxt = prefix.length + 1
    if nxt % params.ell:
        return 0.5
    k = nxt // params.ell
    t = 1
    for j in range(1, params.ell):
        t *= prefix.sign(j * k)
    p_plus = 0.5 + 0.5 * params.theta * t
    return p_plus if candidate == 1 else 1.0 - p_plus


def sample(params: RieszParams, length: int, seed: int) -> SignWord:
    """Draw one word of the given length, exactly distributed by cylinder
    mass, reproducible bit-for-bit from the 64-bit seed.

    Coordinates are decided sequentially by the conditional probabilities
    of :func:`conditional_prob_next`, one uniform draw per coordinate from
    the counter-based stream (seed, 0); extending ``length`` extends the
    word without changing earlier coordinates.
    """
    return SignWord.from_signs_array(sample_batch(params, length, 1, seed)[0])


def sample_batch(params: RieszParams, length: int, count: int, seed: int) -> np.ndarray:
    """Sample ``count`` independent words as an int8 matrix (count, length).

    Row i is drawn from the substream (seed, i), so it equals
    ``sample(params, length, seed)`` for i = 0 and is independent of the
    batch size and of how callers split work across processes.
    """
    if length < 0 or count < 0:
        raise ValueError("length and count must be >= 0")
    out = np.empty((count, length), dtype=np.int8)
    if length == 0 or count == 0:
        return out
    block = max(1, _SAMPLE_BLOCK // max(length, 1))
    for start in range(0, count, block):
        stop = min(start + block, count)
        u = np.empty((stop - start, length), dtype=np.float64)
        for i in range(start, stop):
            u[i - start] = substream(seed, i).random(length)
        out[start:stop] = kernels.sample_signs(u, params.ell, params.theta)
    return out


def fourier_coefficient(params: RieszParams, character: Union[DyadicCharacter, int]) -> float:
    """Fourier coefficient of the measure at a Walsh character.

    The xi_k form a dissociated family, so a character has a nonzero
    coefficient exactly when it is a product of distinct xi_k's, and then
    the coefficient is theta^|S|.  Membership is decided by greedy
    peeling: the largest frequency of a product over S is ell * max(S),
    which forces max(S), is removed by XOR, and the argument repeats.
    Index 0 gives 1 (probability measure).

    :func:`exact_fourier_table` is the enumeration oracle this
    decomposition is validated against.
    """
    ch = _as_character(character)
    idx = ch.index
    if idx == 0:
        return 1.0
    size = 0
    while idx:
        top = idx.bit_length()
        if top % params.ell:
            return 0.0
        idx ^= xi_character_index(top // params.ell, params.ell)
        size += 1
    return params.theta ** size


def cylinder_mass_table(params: RieszParams, n: int) -> np.ndarray:
    """Masses of all 2^n cylinders of depth n at once, indexed by the bit
    pattern of the prefix (bit i-1 set means x_i = -1).

    Kernel-backed bulk twin of :func:`cylinder_mass`.
    """
    if not 0 <= n <= MAX_TABLE_BITS:
        raise ValueError(f"n must lie in [0, {MAX_TABLE_BITS}]")
    return kernels.cylinder_mass_table(n, params.ell, params.theta)


def walsh_transform(values: Iterable[float]) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform in natural ordering:
    out[u] = sum_v values[v] * (-1)^popcount(u & v).

    Input length must be a power of two.
    """
    a = np.array(values, dtype=np.float64)
    if a.ndim != 1 or a.size == 0 or a.size & (a.size - 1):
        raise ValueError("input length must be a positive power of two")
    h = 1
    while h < a.size:
        a = a.reshape(-1, 2, h)
        top = a[:, 0, :] + a[:, 1, :]
        bot = a[:, 0, :] - a[:, 1, :]
        a = np.stack((top, bot), axis=1).reshape(-1)
        h *= 2
    return a


def exact_fourier_table(params: RieszParams, n: int) -> np.ndarray:
    """All Fourier coefficients of index < 2^n by exhaustive summation of
    mass * walsh over the depth-n cylinders.

    Independent oracle for :func:`fourier_coefficient`: any index whose
    largest frequency is at most n is exact here by cylinder consistency.
    """
    return walsh_transform(cylinder_mass_table(params, n))


def expectation_g(params: RieszParams, g: Union[PowerSeriesCoeffs, Iterable[float]]) -> Expectation:
    """Expectation of g(xi_k) for a power series g (any k: they are
    identically distributed).

    Since xi_k^2 = 1, even powers contribute their coefficients directly
    and odd powers contribute theta times theirs:

        E[g(xi_k)] = sum g_{2n} + theta * sum g_{2n-1}.

    The reported error bound is the coefficient tail bound.
    """
    if not isinstance(g, PowerSeriesCoeffs):
        g = PowerSeriesCoeffs(tuple(g))
    even = math.fsum(g.coeffs[0::2])
    odd = math.fsum(g.coeffs[1::2])
    return Expectation(even + params.theta * odd, g.truncation_bound)
