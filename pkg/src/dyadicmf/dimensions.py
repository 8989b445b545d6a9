"""Closed-form dimension values: the binary entropy function, the
spectrum of the sign-product level sets, and the box-dimension series of
the no-double-one subshift with a rigorous tail bound.

The two families of results:

* level sets of the averaged sign products at level theta have Hausdorff
  dimension 1 - 1/ell + H((1+theta)/2)/ell;
* the set of 0/1 sequences with x_l * x_{2l} = 0 for all l has box
  dimension sum_{k>=1} log2(a_k) / 2^(k+1) = 0.8242936..., where a_k
  counts length-k binary strings with no two adjacent ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class DimensionValue:
    """A dimension in [0, 1] plus a bound on the truncated series tail
    (0 for closed forms)."""

    value: float
    tail_bound: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"dimension must lie in [0, 1], got {self.value}")
        if self.tail_bound < 0.0:
            raise ValueError("tail_bound must be >= 0")


def entropy(t: float) -> float:
    """Binary entropy H(t) = -t*log2(t) - (1-t)*log2(1-t).

    The endpoint convention 0*log 0 = 0 is an explicit branch so that
    H(0) and H(1) are exactly 0.0.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"entropy needs t in [0, 1], got {t}")
    if t == 0.0 or t == 1.0:
        return 0.0
    return -t * math.log2(t) - (1.0 - t) * math.log2(1.0 - t)


def hausdorff_dimension_B(ell: int, theta: float) -> DimensionValue:
    """Hausdorff dimension of the level set where the average of
    x_k x_{2k} ... x_{ell*k} converges to theta:

        1 - 1/ell + H((1 + theta)/2) / ell.

    Written as 1 + (H - 1)/ell so that theta = 0 gives exactly 1.0.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if not -1.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [-1, 1], got {theta}")
    h = entropy((1.0 + theta) / 2.0)
    return DimensionValue(1.0 + (h - 1.0) / ell)


def fibonacci(K: int) -> list[int]:
    """Exact counts a_0..a_K of binary strings with no two adjacent ones,
    a_0 = 1, a_1 = 2, a_k = a_{k-1} + a_{k-2}.

    Arbitrary-precision: a_k outgrows 64 bits near k = 90, and the word
    counting module raises these to large powers.
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    values = [1, 2]
    for _ in range(K - 1):
        values.append(values[-1] + values[-2])
    return values[: K + 1]


def box_dimension_X0(terms: int) -> DimensionValue:
    """Partial sum of the box-dimension series of the subshift
    {x in {0,1}^N : x_l * x_{2l} = 0 for all l}:

        sum_{k=1..terms} log2(a_k) / 2^(k+1),

    with tail bound (terms + 2) / 2^(terms + 1), valid since
    log2(a_k) <= k.  64 terms reproduce the limit 0.8242936... well past
    double rounding; the series is summed in double precision ascending k.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    fib = fibonacci(terms)
    value = 0.0
    for k in range(1, terms + 1):
        value += math.ldexp(math.log2(fib[k]), -(k + 1))
    tail = math.ldexp(float(terms + 2), -(terms + 1))
    return DimensionValue(value, tail)
