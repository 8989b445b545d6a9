#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Runs each hot kernel on both backends (when both are importable),
checks the outputs are identical, and prints a timing table.

    python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from dyadicmf._kernels import available_backends
from dyadicmf.rng import substream


def best_of(repeats, func, *args):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = func(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    backends = available_backends()
    names = list(backends)
    print(f"available backends: {', '.join(names)}")
    if "cython" not in backends:
        print("compiled core not built; run `python3 setup.py build_ext --inplace`")

    u_long = substream(11, 0).random((1, 1_000_000))
    u_wide = substream(11, 1).random((200, 5_000))

    cases = [
        ("sample_signs (1 x 1e6, ell=2, th=0.5)", "sample_signs", (u_long, 2, 0.5), 5),
        ("sample_signs (200 x 5e3, ell=3, th=-0.9)", "sample_signs", (u_wide, 3, -0.9), 5),
        ("cylinder_mass_table (n=18, ell=2, th=0.5)", "cylinder_mass_table", (18, 2, 0.5), 5),
        ("count_constrained (n=22)", "count_constrained", (22,), 3),
        ("xi_sum_histogram (n=18, ell=2)", "xi_sum_histogram", (18, 2), 3),
    ]

    width = max(len(label) for label, *_ in cases)
    header = f"{'kernel'.ljust(width)}  " + "".join(f"{n:>12}" for n in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))

    for label, attr, args, repeats in cases:
        times = {}
        outputs = {}
        for name, mod in backends.items():
            times[name], outputs[name] = best_of(repeats, getattr(mod, attr), *args)
        if len(names) > 1:
            a, b = (outputs[n] for n in names)
            same = np.array_equal(a, b) if isinstance(a, np.ndarray) else a == b
            if not same:
                raise SystemExit(f"backends disagree on {label}")
        row = f"{label.ljust(width)}  " + "".join(
            f"{times[n] * 1e3:>10.2f}ms" for n in names
        )
        if len(names) > 1:
            row += f"{times['numpy'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
