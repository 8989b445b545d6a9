"""Self-verification suites: every fast path in the package is replayed
against its independent brute-force or closed-form oracle.

``run_checks("quick")`` finishes in well under a minute; ``"full"`` runs
the same checks at their full advertised ranges plus the statistical
suites, within a few minutes.  Each check yields a :class:`CheckResult`
with the tolerance it enforced and the worst value it observed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import counting, dimensions
from .averages import (
    enumerate_level_set_counts,
    level_set_count,
    lln_experiment,
    local_dimension_estimate,
)
from .measure import (
    RieszParams,
    conditional_prob_next,
    cylinder_mass,
    cylinder_mass_table,
    exact_fourier_table,
    fourier_coefficient,
    sample,
    sample_batch,
)
from .words import SignWord
from .rng import substream

THETA_GRID = (0.0, 0.25, -0.25, 0.5, -0.5, 0.9, -0.9, 1.0, -1.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    tolerance: str
    observed: str
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] {self.name}: observed {self.observed} (tolerance {self.tolerance})"
        if self.detail:
            text += f" -- {self.detail}"
        return text


def _check_normalization(full: bool) -> CheckResult:
    max_n = 16 if full else 12
    worst = 0.0
    for ell in (1, 2, 3, 4):
        for theta in THETA_GRID:
            params = RieszParams(ell, theta)
            for n in range(1, max_n + 1):
                err = abs(float(cylinder_mass_table(params, n).sum()) - 1.0)
                worst = max(worst, err)
    return CheckResult(
        "measure normalization (sum of cylinder masses = 1)",
        worst <= 1e-12,
        "1e-12",
        f"{worst:.3e}",
        f"ell in 1..4, theta grid, n <= {max_n}",
    )


def _check_consistency(full: bool) -> CheckResult:
    max_n = 12 if full else 10
    worst = 0.0
    for ell in (1, 2, 3):
        for theta in (0.0, 0.5, -0.9, 1.0):
            params = RieszParams(ell, theta)
            for n in range(1, max_n + 1):
                coarse = cylinder_mass_table(params, n - 1)
                fine = cylinder_mass_table(params, n)
                # extension bit for position n is bit n-1
                merged = fine[: 1 << (n - 1)] + fine[1 << (n - 1) :]
                worst = max(worst, float(np.abs(merged - coarse).max()))
    return CheckResult(
        "cylinder consistency (mass = sum of the two extensions)",
        worst <= 1e-14,
        "1e-14",
        f"{worst:.3e}",
        f"prefix lengths < {max_n}",
    )


def _check_conditional_chain(full: bool) -> CheckResult:
    lengths = (0, 1, 2, 3, 5, 8, 12)
    worst = 0.0
    exact_sum_ok = True
    rng = substream(20240229, 0)
    for ell in (1, 2, 3):
        for theta in (0.0, 0.5, -0.9, 0.7):
            params = RieszParams(ell, theta)
            for n in lengths:
                word = SignWord.from_signs_array(
                    np.where(rng.random(n) < 0.5, 1, -1).astype(np.int8)
                )
                prod = 1.0
                for i in range(n):
                    prefix = SignWord(word.bits & ((1 << i) - 1), i)
                    p_plus = conditional_prob_next(params, prefix, 1)
                    p_minus = conditional_prob_next(params, prefix, -1)
                    if p_plus + p_minus != 1.0:
                        exact_sum_ok = False
                    prod *= p_plus if word.sign(i + 1) == 1 else p_minus
                worst = max(worst, abs(prod - cylinder_mass(params, word)))
    passed = worst <= 1e-12 and exact_sum_ok
    return CheckResult(
        "conditional probabilities (chain product = mass, sums exactly 1)",
        passed,
        "1e-12 / exact",
        f"{worst:.3e}" + ("" if exact_sum_ok else ", sum != 1"),
    )


def _check_fourier(full: bool) -> CheckResult:
    bits = 10 if full else 8
    worst = 0.0
    for ell in (2, 3):
        for theta in (0.3, 0.9):
            params = RieszParams(ell, theta)
            table = exact_fourier_table(params, bits)
            greedy = np.array(
                [fourier_coefficient(params, idx) for idx in range(1 << bits)]
            )
            worst = max(worst, float(np.abs(greedy - table).max()))
    return CheckResult(
        "Fourier coefficients (greedy peeling = exhaustive summation)",
        worst <= 1e-12,
        "1e-12",
        f"{worst:.3e}",
        f"ell in {{2,3}}, indices < 2^{bits}",
    )


def _check_count_vs_brute(full: bool) -> CheckResult:
    max_n = 20 if full else 16
    bad = None
    for n in range(1, max_n + 1):
        if counting.count_exact(n) != counting.count_brute_force(n):
            bad = n
            break
    return CheckResult(
        "pattern count (product formula = exhaustive enumeration)",
        bad is None,
        "exact",
        "all equal" if bad is None else f"mismatch at n={bad}",
        f"n <= {max_n}",
    )


def _check_chain_invariants(full: bool) -> CheckResult:
    ns = list(range(1, 257)) + [1000, 4095, 4096, 10**4]
    if full:
        ns += [10**5]
    for n in ns:
        dec = counting.chain_decomposition(n)
        seen: set[int] = set()
        total_len = 0
        for q, chain in dec.chains.items():
            seen.update(chain)
            total_len += len(chain)
        if seen != set(range(1, n + 1)) or total_len != n:
            return CheckResult(
                "chain decomposition invariants", False, "exact",
                f"partition broken at n={n}",
            )
        if dec.counts[dec.m] != 1 or list(dec.counts) != sorted(dec.counts, reverse=True):
            return CheckResult(
                "chain decomposition invariants", False, "exact",
                f"column counts broken at n={n}",
            )
        if any(
            dec.counts[k] != sum(1 for c in dec.chains.values() if len(c) >= k + 1)
            for k in range(dec.m + 1)
        ):
            return CheckResult(
                "chain decomposition invariants", False, "exact",
                f"n_k vs chain lengths broken at n={n}",
            )
    return CheckResult(
        "chain decomposition invariants (partition, monotone counts, n_k)",
        True,
        "exact",
        "all hold",
        f"n grid up to {ns[-1]}",
    )


def _check_level_sets(full: bool) -> CheckResult:
    max_n = 18 if full else 14
    for ell in (1, 2, 3):
        for n in range(ell, max_n + 1):
            enum = enumerate_level_set_counts(n, ell)
            m = n // ell
            for s in range(-m, m + 1):
                if level_set_count(n, ell, s) != enum.get(s, 0):
                    return CheckResult(
                        "level set counts (bijection formula = enumeration)",
                        False, "exact", f"mismatch at n={n}, ell={ell}, s={s}",
                    )
    return CheckResult(
        "level set counts (bijection formula = enumeration)",
        True,
        "exact",
        "all equal",
        f"ell in {{1,2,3}}, n <= {max_n}",
    )


def _check_box_series(full: bool) -> CheckResult:
    worst = 0.0
    for K in range(1, 49):
        a = dimensions.box_dimension_X0(K)
        b = dimensions.box_dimension_X0(K + 16)
        if abs(a.value - b.value) > a.tail_bound:
            return CheckResult(
                "box dimension series (tail bound controls truncation)",
                False, "tail bound", f"violated at K={K}",
            )
    digits = abs(dimensions.box_dimension_X0(64).value - 0.8242936)
    worst = max(worst, digits)
    return CheckResult(
        "box dimension series (tail bound, value 0.8242936 at 64 terms)",
        digits <= 5e-7,
        "5e-7",
        f"{digits:.3e}",
    )


def _check_sampler_determinism(full: bool) -> CheckResult:
    params = RieszParams(2, 0.5)
    w1 = sample(params, 64, 12345)
    w2 = sample(params, 64, 12345)
    w3 = sample(params, 64, 54321)
    long = sample(params, 128, 12345)
    ok = (
        w1 == w2
        and w1 != w3
        and long.bits & ((1 << 64) - 1) == w1.bits
    )
    return CheckResult(
        "sampler determinism (seed-stable, seed-sensitive, prefix-stable)",
        ok,
        "exact",
        "ok" if ok else "violated",
    )


def _check_sampler_conditional(full: bool) -> CheckResult:
    """A sampled word must reproduce the sequential decision rule: at each
    step the drawn sign is the one the conditional probability and the
    recorded uniform dictate."""
    for ell in (1, 2, 3):
        for theta in (0.0, 0.5, -0.9, 1.0):
            params = RieszParams(ell, theta)
            n = 96
            seed = 777
            u = substream(seed, 0).random(n)
            word = sample(params, n, seed)
            for i in range(n):
                prefix = SignWord(word.bits & ((1 << i) - 1), i)
                p_plus = conditional_prob_next(params, prefix, 1)
                expected = 1 if u[i] < p_plus else -1
                if word.sign(i + 1) != expected:
                    return CheckResult(
                        "sampler vs conditional rule", False, "exact",
                        f"mismatch at ell={ell}, theta={theta}, pos={i + 1}",
                    )
    return CheckResult(
        "sampler vs conditional rule (kernel replays the public formula)",
        True,
        "exact",
        "all coordinates agree",
    )


def _check_sampler_fidelity(full: bool) -> CheckResult:
    params = RieszParams(2, 0.5)
    draws = 100_000 if full else 20_000
    depth = 6
    words = sample_batch(params, 12, draws, 2024)
    bits = (words[:, :depth] == -1).astype(np.int64)
    codes = bits @ (1 << np.arange(depth, dtype=np.int64))
    freq = np.bincount(codes, minlength=1 << depth) / draws
    masses = cylinder_mass_table(params, depth)
    sigma = np.sqrt(masses * (1.0 - masses) / draws)
    z = np.abs(freq - masses) / sigma
    worst = float(z.max())
    return CheckResult(
        "sampler fidelity (cylinder frequencies vs exact masses)",
        worst <= 4.0,
        "4 sigma",
        f"{worst:.2f} sigma",
        f"{draws} words, all depth-{depth} cylinders",
    )


def _check_lln(full: bool) -> CheckResult:
    n = 10_000
    trials = 50
    worst = 0.0
    for ell, theta in ((2, 0.5), (1, -0.5), (3, 0.9)):
        report = lln_experiment(RieszParams(ell, theta), n, trials, 99)
        bound_mean = 4.0 * math.sqrt((1.0 - theta * theta) / (n * trials))
        bound_max = 6.0 * math.sqrt((1.0 - theta * theta) / n)
        if theta * theta == 1.0:
            continue
        worst = max(
            worst,
            abs(report.mean_of_averages - theta) / bound_mean,
            report.max_deviation / bound_max,
        )
    return CheckResult(
        "law of large numbers (averages concentrate at theta)",
        worst <= 1.0,
        "variance bounds",
        f"{worst:.2f} of bound",
        f"n={n}, {trials} trials",
    )


def _check_local_dimension(full: bool) -> CheckResult:
    length = 10**6 if full else 10**5
    seeds = 20 if full else 8
    worst = 0.0
    for ell, theta in ((2, 0.5), (3, 0.9)):
        params = RieszParams(ell, theta)
        target = dimensions.hausdorff_dimension_B(ell, theta).value
        for s in range(seeds):
            word = SignWord.from_signs_array(sample_batch(params, length, 1, 4000 + s)[0])
            est = local_dimension_estimate(params, word)
            worst = max(worst, abs(est - target))
    tol = 0.005 if full else 0.02
    return CheckResult(
        "local dimension (log-mass ratio near the spectrum value)",
        worst <= tol,
        f"{tol}",
        f"{worst:.4f}",
        f"words of length {length}, {seeds} seeds per case",
    )


def _check_log_count_convergence(full: bool) -> CheckResult:
    targets = [2**10, 2**14, 2**18, 2**20]
    diffs = [abs(counting.normalized_log_count(n) - 0.8242936) for n in targets]
    monotone = all(d2 <= d1 for d1, d2 in zip(diffs, diffs[1:]))
    return CheckResult(
        "normalized log count converges to the box dimension",
        diffs[-1] <= 5e-3 and monotone,
        "5e-3, non-increasing",
        f"final {diffs[-1]:.3e}",
        "n in {2^10, 2^14, 2^18, 2^20}",
    )


def _check_per_chain_vs_grouped(full: bool) -> CheckResult:
    grid = [1, 2, 3, 10, 100, 12345, 10**5]
    if full:
        grid.append(10**6)
    for n in grid:
        counting.count_exact(n)  # raises internally on route disagreement
    return CheckResult(
        "per-chain product = grouped product",
        True,
        "exact",
        "all equal",
        f"spot grid up to {grid[-1]}",
    )


_CHECKS: tuple[tuple[str, Callable[[bool], CheckResult]], ...] = (
    ("normalization", _check_normalization),
    ("consistency", _check_consistency),
    ("conditional", _check_conditional_chain),
    ("fourier", _check_fourier),
    ("count-oracle", _check_count_vs_brute),
    ("chains", _check_chain_invariants),
    ("level-sets", _check_level_sets),
    ("box-series", _check_box_series),
    ("determinism", _check_sampler_determinism),
    ("sampler-rule", _check_sampler_conditional),
    ("fidelity", _check_sampler_fidelity),
    ("lln", _check_lln),
    ("local-dimension", _check_local_dimension),
    ("log-count", _check_log_count_convergence),
    ("count-routes", _check_per_chain_vs_grouped),
)


def run_checks(level: str = "quick", emit: Callable[[str], None] | None = None) -> list[CheckResult]:
    """Run the oracle cross-check suites; ``level`` is "quick" or "full".

    Emits one line per check (to ``emit``, default print) and returns the
    results.  All checks run even after a failure.
    """
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    full = level == "full"
    say = emit if emit is not None else print
    results = []
    for _, func in _CHECKS:
        start = time.perf_counter()
        result = func(full)
        elapsed = time.perf_counter() - start
        say(result.line() + f" [{elapsed:.1f}s]")
        results.append(result)
    return results


def all_passed(results: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in results)
