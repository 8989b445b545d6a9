"""Acceptance gate: every criterion at its stated tolerance and budget.

Each test prints one `[PASS]/[FAIL] criterion N` line (visible with
`pytest tests/test_acceptance.py -v -s`) and asserts the same condition,
so the suite is both a readable report and a hard gate.
"""

import json
import math
import time

import numpy as np
from click.testing import CliRunner

from dyadicmf.averages import (
    enumerate_level_set_counts,
    level_set_count,
    lln_experiment,
    local_dimension_estimate,
)
from dyadicmf.cli import main as cli_main
from dyadicmf.counting import count_brute_force, count_exact, normalized_log_count
from dyadicmf.dimensions import entropy, hausdorff_dimension_B
from dyadicmf.measure import RieszParams, cylinder_mass_table, exact_fourier_table, fourier_coefficient, sample_batch
from dyadicmf.words import SignWord


def report(number, title, passed, observed, budget, elapsed):
    status = "PASS" if passed else "FAIL"
    print(
        f"[{status}] criterion {number}: {title} -- {observed} "
        f"({elapsed:.1f}s of {budget:.0f}s budget)"
    )
    assert passed, f"criterion {number} failed: {observed}"
    assert elapsed < budget, f"criterion {number} exceeded {budget}s: {elapsed:.1f}s"


def test_criterion_01_box_dimension_constant():
    start = time.perf_counter()
    result = CliRunner().invoke(
        cli_main, ["boxdim", "--terms", "64", "--format", "json"]
    )
    record = json.loads(result.output)
    value = float(record["results"]["value"]["decimal"])
    tail = float(record["results"]["tail_bound"]["decimal"])
    err = abs(value - 0.8242936)
    elapsed = time.perf_counter() - start
    report(
        1, "box-dimension constant at 64 terms",
        result.exit_code == 0 and err <= 5e-7 and tail <= 1e-15,
        f"|value - 0.8242936| = {err:.2e}, tail {tail:.2e}",
        1.0, elapsed,
    )


def test_criterion_02_counting_oracle_equivalence():
    start = time.perf_counter()
    mismatches = [
        n for n in range(1, 21) if count_exact(n) != count_brute_force(n)
    ]
    elapsed = time.perf_counter() - start
    report(
        2, "count formula = brute force for n <= 20",
        not mismatches,
        "all 20 equal" if not mismatches else f"mismatch at {mismatches}",
        60.0, elapsed,
    )


def test_criterion_03_counting_convergence():
    start = time.perf_counter()
    diffs = [
        abs(normalized_log_count(1 << t) - 0.8242936) for t in (10, 14, 18, 20)
    ]
    monotone = all(a >= b for a, b in zip(diffs, diffs[1:]))
    elapsed = time.perf_counter() - start
    report(
        3, "normalized log count converges (2^10..2^20)",
        diffs[-1] <= 5e-3 and monotone,
        f"final gap {diffs[-1]:.2e}, profile {'non-increasing' if monotone else 'NOT monotone'}",
        1.0, elapsed,
    )


def test_criterion_04_measure_normalization():
    start = time.perf_counter()
    worst = 0.0
    for ell in (1, 2, 3):
        for theta in (0.0, 0.5, -0.5, 0.9, -0.9, 1.0, -1.0):
            params = RieszParams(ell, theta)
            for n in range(1, 17):
                total = float(cylinder_mass_table(params, n).sum())
                worst = max(worst, abs(total - 1.0))
    elapsed = time.perf_counter() - start
    report(
        4, "cylinder masses sum to 1 (n <= 16)",
        worst <= 1e-12,
        f"worst |sum - 1| = {worst:.2e}",
        120.0, elapsed,
    )


def test_criterion_05_fourier_oracle():
    start = time.perf_counter()
    worst = 0.0
    for ell in (2, 3):
        for theta in (0.3, 0.9):
            params = RieszParams(ell, theta)
            table = exact_fourier_table(params, 10)
            greedy = np.array(
                [fourier_coefficient(params, idx) for idx in range(1 << 10)]
            )
            worst = max(worst, float(np.abs(greedy - table).max()))
    elapsed = time.perf_counter() - start
    report(
        5, "Fourier coefficients match exact summation (indices < 2^10)",
        worst <= 1e-12,
        f"worst gap {worst:.2e}",
        120.0, elapsed,
    )


def test_criterion_06_sampler_fidelity():
    start = time.perf_counter()
    params = RieszParams(2, 0.5)
    draws = 100_000
    depth = 6
    words = sample_batch(params, 12, draws, 2024)
    codes = (words[:, :depth] == -1).astype(np.int64) @ (
        1 << np.arange(depth, dtype=np.int64)
    )
    freq = np.bincount(codes, minlength=1 << depth) / draws
    masses = cylinder_mass_table(params, depth)
    sigma = np.sqrt(masses * (1.0 - masses) / draws)
    z = float(np.max(np.abs(freq - masses) / sigma))
    elapsed = time.perf_counter() - start
    report(
        6, "sampler fidelity over all depth-6 cylinders (1e5 words)",
        z <= 4.0,
        f"worst deviation {z:.2f} sigma",
        30.0, elapsed,
    )


def test_criterion_07_law_of_large_numbers():
    start = time.perf_counter()
    n, trials = 100_000, 100
    failures = []
    worst = 0.0
    for ell in (1, 2, 3):
        for theta in (-0.5, 0.0, 0.9):
            rep = lln_experiment(RieszParams(ell, theta), n, trials, 1234)
            var = 1.0 - theta * theta
            mean_bound = 4.0 * math.sqrt(var / (n * trials))
            max_bound = 6.0 * math.sqrt(var / n)
            mean_err = abs(rep.mean_of_averages - theta)
            if mean_err > mean_bound or rep.max_deviation > max_bound:
                failures.append((ell, theta))
            worst = max(worst, mean_err / mean_bound, rep.max_deviation / max_bound)
    elapsed = time.perf_counter() - start
    report(
        7, "LLN concentration (9 configs, n=1e5, 100 trials)",
        not failures,
        f"worst fraction of bound {worst:.2f}" + (f", failed {failures}" if failures else ""),
        120.0, elapsed,
    )


def test_criterion_08_local_dimension():
    start = time.perf_counter()
    length = 10**6
    seeds = 100
    results = []
    for ell in (2, 3):
        for theta in (0.5, 0.9):
            params = RieszParams(ell, theta)
            target = 1.0 - 1.0 / ell + entropy((1.0 + theta) / 2.0) / ell
            hits = 0
            for s in range(seeds):
                word = SignWord.from_signs_array(
                    sample_batch(params, length, 1, 10_000 + s)[0]
                )
                if abs(local_dimension_estimate(params, word) - target) <= 0.005:
                    hits += 1
            results.append((ell, theta, hits))
    elapsed = time.perf_counter() - start
    report(
        8, "local dimension within 0.005 for >= 95/100 seeds (length 1e6)",
        all(hits >= 95 for *_cfg, hits in results),
        ", ".join(f"ell={e} theta={t}: {h}/100" for e, t, h in results),
        300.0, elapsed,
    )


def test_criterion_09_level_set_combinatorics():
    start = time.perf_counter()
    mismatch = None
    for ell in (1, 2, 3):
        for n in range(ell, 19):
            enum = enumerate_level_set_counts(n, ell)
            m = n // ell
            for s in range(-m, m + 1):
                if level_set_count(n, ell, s) != enum.get(s, 0):
                    mismatch = (n, ell, s)
    n, ell = 10**5, 2
    m = n // ell
    s = round(0.5 * m)
    rate = math.log2(level_set_count(n, ell, s)) / n
    gap = abs(rate - 0.905639)
    elapsed = time.perf_counter() - start
    report(
        9, "level-set counts exact (n <= 18) and rate at n=1e5",
        mismatch is None and gap <= 1e-3,
        f"enumeration {'clean' if mismatch is None else f'mismatch {mismatch}'}, "
        f"|rate - 0.905639| = {gap:.2e}",
        180.0, elapsed,
    )


def test_criterion_10_closed_form_spot_values():
    start = time.perf_counter()
    exact_one = all(
        hausdorff_dimension_B(ell, 0.0).value == 1.0 for ell in range(1, 11)
    )
    exact_half = (
        hausdorff_dimension_B(2, 1.0).value == 0.5
        and hausdorff_dimension_B(2, -1.0).value == 0.5
    )
    worst = 0.0
    for theta in np.linspace(-1.0, 1.0, 101):
        got = hausdorff_dimension_B(1, float(theta)).value
        want = entropy((1.0 + float(theta)) / 2.0)
        worst = max(worst, abs(got - want))
    elapsed = time.perf_counter() - start
    report(
        10, "closed-form spot values",
        exact_one and exact_half and worst <= 1e-15,
        f"theta=0 exact: {exact_one}, |theta|=1 exact: {exact_half}, "
        f"ell=1 gap {worst:.1e}",
        1.0, elapsed,
    )
