"""Command-line interface.

Exit codes: 0 success / all checks pass, 1 some inequality check failed,
2 input or usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional, Sequence

import click

from . import bounds as bd
from .bounds import BoundParams, as_variant, default_params
from .errors import BombieriError
from .fixtures import selfcheck as run_selfcheck
from .io import ReportRow, emit_report, fmt, parse_instance
from .optimize import FAMILIES, optimize_exponents
from .verify import DEFAULT_TOL, InstanceConfig, check_bound, fuzz as run_fuzz


class CheckFailed(Exception):
    """Signals exit code 1 after output has been written."""


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc.strerror}")
    return parse_instance(data)


def _variants(text: str) -> list:
    if text.strip().lower() == "all":
        return list(bd.ALL_VARIANTS)
    return [as_variant(t) for t in text.split(",") if t.strip()]


def _params_for(variant, given: BoundParams) -> BoundParams:
    base = default_params(variant)
    chosen = {k: getattr(given, k) or getattr(base, k) for k in variant.param_names}
    return BoundParams(**chosen)


@click.group()
def cli():
    """Evaluate, verify and optimize Bombieri/Bessel-type bounds."""


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--variants", default="all", show_default=True, help="Comma-separated tags or 'all'.")
@click.option("--params", "params_text", default="", help="Exponents, e.g. p=1.5,t=2,m=inf.")
@click.option("--form", type=click.Choice(["derived", "as-printed", "both"]), default="derived",
              show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.option("--format", "fmt_", type=click.Choice(["table", "csv", "json"]), default="table",
              show_default=True)
def evaluate(input_path, variants, params_text, form, tol, output, fmt_):
    """Check the selected bounds on one instance."""
    inst = _load(input_path)
    given = BoundParams.parse(params_text)
    rows = []
    for v in _variants(variants):
        pr = _params_for(v, given)
        forms = ["derived"]
        if v.family == "F":
            if form == "as-printed":
                forms = ["as_printed"]
            elif form == "both" and v in bd.AS_PRINTED_DISTINCT:
                forms = ["derived", "as_printed"]
        for f in forms:
            rows.append(ReportRow.from_result(check_bound(inst, v, pr, f, tol)))
    payload = emit_report(rows, fmt_)
    if output:
        Path(output).write_bytes(payload)
    else:
        click.echo(payload.decode("utf-8"), nl=False)
    if not all(r.passed for r in rows):
        raise CheckFailed
    return 0


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
def compare(input_path):
    """Max Gram row sum (M1) against the Frobenius norm (M2)."""
    inst = _load(input_path)
    m1, m2, winner = bd.compare_M1_M2(inst.G)
    click.echo(f"M1={fmt(m1)}")
    click.echo(f"M2={fmt(m2)}")
    click.echo(f"winner={winner}")


@cli.command()
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--n-max", type=click.IntRange(min=0), default=16, show_default=True)
@click.option("--d-max", type=click.IntRange(min=1), default=32, show_default=True)
@click.option("--field", type=click.Choice(["real", "complex", "alternating"]), default="real",
              show_default=True)
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True)
@click.option("--variants", default="all", show_default=True)
@click.option("--conditioning", type=click.Choice(["generic", "near-orthonormal", "collinear"]),
              default="generic", show_default=True)
@click.option("--entry-scale", type=float, default=1.0, show_default=True)
@click.option("--form", type=click.Choice(["derived", "as-printed", "both"]), default="derived",
              show_default=True)
def fuzz(trials, n_max, d_max, field, seed, tol, variants, conditioning, entry_scale, form):
    """Certify the bounds on random instances."""
    config = InstanceConfig(field=field, n_max=n_max, d_max=d_max, entry_scale=entry_scale,
                            conditioning=conditioning.replace("-", "_"), seed=seed)
    forms = {"derived": ("derived",), "as-printed": ("as_printed",),
             "both": ("derived", "as_printed")}[form]
    report = run_fuzz(config, _variants(variants), trials, tol, forms=forms)
    click.echo(f"trials={report.trials} checks={report.checks} failures={len(report.failures)}")
    width = max((len(k) for k in report.min_rel_slack), default=0)
    for key in sorted(report.min_rel_slack):
        near = len(report.near_equality.get(key, ()))
        click.echo(f"  {key.ljust(width)}  min_rel_slack={report.min_rel_slack[key]:.3e}  near_equality={near}")
    for trial, digest, res in report.failures[:50]:
        click.echo(f"FAIL seed={trial} {digest} {res.variant} [{res.form}] "
                   f"params={res.params.render() if res.params else ''} lhs={fmt(res.lhs)} bound={fmt(res.bound)}")
    if report.failures:
        raise CheckFailed


@cli.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False))
@click.option("--family", type=click.Choice(sorted(FAMILIES), case_sensitive=False), required=True)
@click.option("--grid-steps", type=click.IntRange(min=2), default=9, show_default=True)
@click.option("--refine-iters", type=click.IntRange(min=0), default=20, show_default=True)
def optimize(input_path, family, grid_steps, refine_iters):
    """Find the exponents giving the smallest bound in a family."""
    inst = _load(input_path)
    res = optimize_exponents(inst, family, grid_steps, refine_iters)
    click.echo(f"family={res.family}")
    click.echo(f"variant={res.best_variant}")
    click.echo(f"params={res.best_params.render()}")
    click.echo(f"best_value={fmt(res.best_value)}")
    click.echo(f"evaluations={res.evaluations}")


@cli.command()
@click.option("--fuzz-trials", type=click.IntRange(min=1), default=200, show_default=True)
def selfcheck(fuzz_trials):
    """Run the built-in fixtures; nonzero exit on any failure."""
    results = run_selfcheck(fuzz_trials)
    for name, ok, detail in results:
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
    if not all(ok for _, ok, _ in results):
        raise CheckFailed


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cli.main(args=args, prog_name="bombieri", standalone_mode=False)
    except CheckFailed:
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 2
    except BombieriError as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return 2
    return 0


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
