"""Command-line surface.

Every command supports ``--format {table,csv,json}``.  JSON output is an
OutputRecord: command name, parameters, results and provenance (seed,
package version), with every number carried as a decimal string plus an
explicit digit count so consumers never re-round floats; identical inputs
and seed produce byte-identical JSON.  The schema ships in
``docs/output_schema.json``.

The default seed is 0, overridable with the environment variable
``DYADICMF_SEED`` or per command with ``--seed``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys

import click
import numpy as np

from . import __version__, counting, verify
from .averages import empirical_spectrum, lln_experiment
from .dimensions import box_dimension_X0, hausdorff_dimension_B
from .measure import RieszParams, sample_batch

_FORMATS = click.Choice(["table", "csv", "json"])


def _default_seed() -> int:
    raw = os.environ.get("DYADICMF_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"DYADICMF_SEED must be an integer, got {raw!r}")


def _num(value) -> dict:
    """Decimal-string form with an explicit precision, lossless round trip."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numeric results")
    if isinstance(value, (int, np.integer)):
        text = str(int(value))
        return {"decimal": text, "digits": len(text.lstrip("-"))}
    return {"decimal": format(float(value), ".17g"), "digits": 17}


def _record(command: str, parameters: dict, results: dict, seed=None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "provenance": {"seed": seed, "version": __version__},
    }


def _emit_json(record: dict) -> None:
    click.echo(json.dumps(record, indent=2, sort_keys=True))


def _emit_table(pairs: list[tuple[str, str]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, val in pairs:
        click.echo(f"{key.ljust(width)}  {val}")


@click.group()
@click.version_option(__version__, prog_name="dyadicmf")
def main():
    """Riesz-product measures, multiple ergodic averages and fractal
    dimensions on the binary symbolic space."""


@main.command()
@click.option("--ell", type=int, default=2, show_default=True, help="Multiplicity of the sign product.")
@click.option("--theta-min", type=float, default=-1.0, show_default=True)
@click.option("--theta-max", type=float, default=1.0, show_default=True)
@click.option("--steps", type=int, default=41, show_default=True, help="Number of grid points.")
@click.option("--empirical-n", type=int, default=None,
              help="Emit the finite-n level-set rates log2(count)/n on the "
                   "admissible s/m grid instead of the closed form.")
@click.option("--format", "fmt", type=_FORMATS, default="table", show_default=True)
def spectrum(ell, theta_min, theta_max, steps, empirical_n, fmt):
    """Dimension spectrum theta -> dim of the level set: closed form on a
    uniform grid, or finite-n counting rates with --empirical-n."""
    if steps < 1:
        raise click.UsageError("--steps must be >= 1")
    if ell < 1:
        raise click.UsageError("--ell must be >= 1")
    if not (-1.0 <= theta_min <= theta_max <= 1.0):
        raise click.UsageError("need -1 <= theta-min <= theta-max <= 1")
    parameters = {"ell": _num(ell), "theta_min": _num(theta_min),
                  "theta_max": _num(theta_max), "steps": _num(steps)}
    if empirical_n is not None:
        if empirical_n < ell:
            raise click.UsageError("--empirical-n must be >= ell")
        parameters["empirical_n"] = _num(empirical_n)
        rows = [(t, r) for t, r in empirical_spectrum(empirical_n, ell)
                if theta_min <= t <= theta_max]
    else:
        thetas = np.linspace(theta_min, theta_max, steps)
        rows = [(float(t), hausdorff_dimension_B(ell, float(t)).value) for t in thetas]
    if fmt == "csv":
        click.echo("theta,dimension")
        for t, d in rows:
            click.echo(f"{t:.17g},{d:.17g}")
    elif fmt == "json":
        _emit_json(_record(
            "spectrum",
            parameters,
            {"grid": [{"theta": _num(t), "dimension": _num(d)} for t, d in rows]},
        ))
    else:
        _emit_table([(f"{t:+.6f}", f"{d:.15f}") for t, d in rows])


@main.command()
@click.option("--n", type=int, required=True, help="Word length.")
@click.option("--mode", type=click.Choice(["exact", "brute", "log2rate"]),
              default="exact", show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="table", show_default=True)
def count(n, mode, fmt):
    """Count length-n binary words with no 1 at both positions l and 2l."""
    if n < 1:
        raise click.UsageError("--n must be >= 1")
    if mode == "brute" and n > counting.ENUMERATION_MAX_BITS:
        raise click.UsageError(
            f"brute enumeration budget is n <= {counting.ENUMERATION_MAX_BITS}"
        )
    if mode == "exact":
        results = {"count": _num(counting.count_exact(n))}
        shown = results["count"]["decimal"]
    elif mode == "brute":
        results = {"count": _num(counting.count_brute_force(n))}
        shown = results["count"]["decimal"]
    else:
        rate = counting.normalized_log_count(n)
        results = {"log2_rate": _num(rate)}
        shown = f"{rate:.9f}"
    if fmt == "csv":
        click.echo("n,mode,value")
        click.echo(f"{n},{mode},{shown}")
    elif fmt == "json":
        _emit_json(_record("count", {"n": _num(n), "mode": mode}, results))
    else:
        _emit_table([("n", str(n)), ("mode", mode), ("value", shown)])


@main.command()
@click.option("--terms", type=int, default=64, show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="table", show_default=True)
def boxdim(terms, fmt):
    """Box-dimension series of the constrained subshift, with tail bound."""
    if terms < 1:
        raise click.UsageError("--terms must be >= 1")
    dim = box_dimension_X0(terms)
    if fmt == "csv":
        click.echo("terms,value,tail_bound")
        click.echo(f"{terms},{dim.value:.17g},{dim.tail_bound:.17g}")
    elif fmt == "json":
        _emit_json(_record(
            "boxdim",
            {"terms": _num(terms)},
            {"value": _num(dim.value), "tail_bound": _num(dim.tail_bound)},
        ))
    else:
        _emit_table([
            ("terms", str(terms)),
            ("value", f"{dim.value:.10f}"),
            ("tail_bound", f"{dim.tail_bound:.3e}"),
        ])


@main.command()
@click.option("--ell", type=int, default=2, show_default=True)
@click.option("--theta", type=float, required=True)
@click.option("--length", type=int, required=True)
@click.option("--count", "n_words", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=None, help="Defaults to $DYADICMF_SEED or 0.")
@click.option("--stats", is_flag=True, help="Report average statistics instead of words.")
@click.option("--format", "fmt", type=_FORMATS, default="table", show_default=True)
def sample(ell, theta, length, n_words, seed, stats, fmt):
    """Draw words from the biased measure (bit-reproducible per seed)."""
    if ell < 1:
        raise click.UsageError("--ell must be >= 1")
    if not -1.0 <= theta <= 1.0:
        raise click.UsageError("--theta must lie in [-1, 1]")
    if length < 1 or n_words < 1:
        raise click.UsageError("--length and --count must be >= 1")
    if seed is None:
        seed = _default_seed()
    params = RieszParams(ell, theta)
    parameters = {
        "ell": _num(ell), "theta": _num(theta), "length": _num(length),
        "count": _num(n_words), "stats": stats,
    }
    if stats:
        if length < ell:
            raise click.UsageError("--stats needs length >= ell")
        report = lln_experiment(params, length // ell, n_words, seed)
        results = {
            "trials": _num(report.trials),
            "n": _num(report.n),
            "theta": _num(report.theta),
            "mean_of_averages": _num(report.mean_of_averages),
            "rms_deviation": _num(report.rms_deviation),
            "max_deviation": _num(report.max_deviation),
        }
        if fmt == "csv":
            keys = list(results)
            click.echo(",".join(keys))
            click.echo(",".join(results[k]["decimal"] for k in keys))
        elif fmt == "json":
            _emit_json(_record("sample", parameters, results, seed=seed))
        else:
            _emit_table([(k, v["decimal"]) for k, v in results.items()])
        return
    words = sample_batch(params, length, n_words, seed)
    texts = ["".join("+" if s == 1 else "-" for s in row) for row in words.tolist()]
    if fmt == "csv":
        click.echo("index,word")
        for i, text in enumerate(texts):
            click.echo(f"{i},{text}")
    elif fmt == "json":
        _emit_json(_record("sample", parameters, {"words": texts}, seed=seed))
    else:
        for text in texts:
            click.echo(text)


@main.command("verify")
@click.option("--level", type=click.Choice(["quick", "full"]), default="quick",
              show_default=True)
@click.option("--format", "fmt", type=_FORMATS, default="table", show_default=True)
def verify_cmd(level, fmt):
    """Run the oracle cross-check suites; exit 1 if any check fails."""
    if fmt == "table":
        results = verify.run_checks(level)
    else:
        results = verify.run_checks(level, emit=lambda _line: None)
    ok = verify.all_passed(results)
    if fmt == "csv":
        click.echo("check,passed,tolerance,observed")
        for r in results:
            click.echo(f"\"{r.name}\",{r.passed},\"{r.tolerance}\",\"{r.observed}\"")
    elif fmt == "json":
        _emit_json(_record(
            "verify",
            {"level": level},
            {"passed": ok,
             "checks": [
                 {"name": r.name, "passed": r.passed,
                  "tolerance": r.tolerance, "observed": r.observed,
                  "detail": r.detail}
                 for r in results
             ]},
        ))
    if not ok:
        sys.exit(1)


if __name__ == "__main__":
    main()
