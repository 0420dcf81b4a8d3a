"""``trine-lab`` command line.

Exit codes: 0 on success, 1 for usage or I/O errors, 2 when an internal
verification check fails.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import click

from . import verify
from .discrimination import error_probability, holevo_optimality_check, pgm
from .locc import ONE_WAY_OPTIMUM, two_way_sweep
from .separability import ppt_separable, separable_element, separable_pgm
from .serialize import povm_to_dict, to_jsonable
from .states import double_trine

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
SEED_ENV = "TRINE_LAB_SEED"
FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    grid_step: float = 1e-4
    tolerance: float = 1e-9
    seed: int = 42
    output_path: str | None = None
    format: str = "text"

    def __post_init__(self):
        if not 0 < self.grid_step <= 0.1:
            raise ValueError(f"grid step {self.grid_step} outside (0, 0.1]")
        if not 0 < self.tolerance <= 1e-3:
            raise ValueError(f"tolerance {self.tolerance} outside (0, 1e-3]")
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")


def sci(x: float) -> str:
    """Sixteen significant digits with an unpadded exponent, e.g. ``2.8595...e-2``."""
    if not math.isfinite(x):
        return str(x)
    mant, exp = f"{x:.15e}".split("e")
    return f"{mant}e{int(exp)}"


def _resolve_seed(seed: int) -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return seed
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _check_lines(checks) -> list[str]:
    width = max(len(c.name) for c in checks)
    return [
        f"  [{'PASS' if c.passed else 'FAIL'}] {c.name:<{width}}  {sci(c.value)}"
        + (f"  {c.detail}" if c.detail else "")
        for c in checks
    ]


def _checks_csv(checks) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "passed", "value"])
    for c in checks:
        w.writerow([c.name, int(c.passed), "%.17g" % c.value])
    return buf.getvalue()


def _json(cfg: RunConfig, results: dict, checks) -> str:
    doc = {
        "command": cfg.subcommand,
        "config": {"grid_step": cfg.grid_step, "tolerance": cfg.tolerance, "seed": cfg.seed},
        "results": results,
        "checks": checks,
        "passed": all(c.passed for c in checks),
    }
    return json.dumps(to_jsonable(doc), indent=2, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise click.FileError(cfg.output_path, hint=exc.strerror or str(exc)) from None


def _render(cfg: RunConfig, title: str, summary: list[tuple[str, str]], results: dict, checks) -> int:
    if cfg.format == "json":
        body = _json(cfg, results, checks)
    elif cfg.format == "csv":
        body = _checks_csv(checks)
    else:
        width = max((len(k) for k, _ in summary), default=0)
        lines = [title] + [f"  {k:<{width}}  {v}" for k, v in summary]
        lines += ["checks"] + _check_lines(checks)
        body = "\n".join(lines) + "\n"
    _emit(cfg, body)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def _options(fn):
    fn = click.option("--out", "output_path", type=click.Path(dir_okay=False), default=None,
                      help="Write to this file instead of stdout.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default="text", show_default=True)(fn)
    fn = click.option("--seed", type=int, default=42, show_default=True,
                      help=f"RNG seed; {SEED_ENV} overrides it.")(fn)
    fn = click.option("--tol", type=float, default=1e-9, show_default=True,
                      help="Verification tolerance, in (0, 1e-3].")(fn)
    fn = click.option("--grid-step", type=float, default=1e-4, show_default=True,
                      help="Sweep spacing, in (0, 0.1].")(fn)
    return fn


def _config(name, grid_step, tol, seed, fmt, output_path) -> RunConfig:
    try:
        return RunConfig(name, grid_step, tol, _resolve_seed(seed), output_path, fmt)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


@click.group()
@click.version_option(package_name="artifact", prog_name="trine-lab")
def cli():
    """Reproduce and verify the double-trine discrimination results."""


@cli.command("global")
@_options
@click.option("--perturb-pgm", is_flag=True, hidden=True)
def cmd_global(grid_step, tol, seed, fmt, output_path, perturb_pgm):
    """Global optimum, PGM optimality margin and SEP certificates."""
    cfg = _config("global", grid_step, tol, seed, fmt, output_path)
    ens = double_trine()
    povm = verify.perturbed_pgm() if perturb_pgm else pgm(ens)
    checks = verify.global_checks(cfg.tolerance, povm) + verify.sep_checks(cfg.tolerance)
    err = error_probability(ens, povm)
    margin = holevo_optimality_check(ens, povm).min_eigenvalue_margin
    pt = [ppt_separable(separable_element(i)).min_pt_eigenvalue for i in range(3)]
    summary = [
        ("error probability", sci(err)),
        ("1/2 - sqrt(2)/3", sci(verify.GLOBAL_OPTIMUM)),
        ("optimality margin", sci(margin)),
        ("SEP error", sci(error_probability(ens, separable_pgm()))),
    ] + [(f"SEP element {i} min PT eig", sci(v)) for i, v in enumerate(pt)]
    results = {"error": err, "closed_form": verify.GLOBAL_OPTIMUM, "optimality_margin": margin,
               "povm": povm_to_dict(povm), "sep_min_pt_eigenvalues": pt}
    return _render(cfg, "global optimum", summary, results, checks)


@cli.command("sep")
@_options
def cmd_sep(grid_step, tol, seed, fmt, output_path):
    """Separable POVM: error, PPT and product decompositions."""
    cfg = _config("sep", grid_step, tol, seed, fmt, output_path)
    checks = verify.sep_checks(cfg.tolerance)
    sep = separable_pgm()
    err = error_probability(double_trine(), sep)
    summary = [("SEP error", sci(err)), ("1/2 - sqrt(2)/3", sci(verify.GLOBAL_OPTIMUM))]
    return _render(cfg, "separable measurement", summary, {"error": err, "povm": povm_to_dict(sep)}, checks)


@cli.command("oneway")
@_options
def cmd_oneway(grid_step, tol, seed, fmt, output_path):
    """One-way LOCC optimum over Alice's projective measurements."""
    cfg = _config("oneway", grid_step, tol, seed, fmt, output_path)
    checks, opt = verify.oneway_checks(cfg.tolerance, cfg.grid_step)
    summary = [
        ("error", sci(opt.error)),
        ("1/2 - sqrt(3)/4", sci(ONE_WAY_OPTIMUM)),
        ("theta", sci(opt.theta)),
        ("phi", sci(opt.phi)),
    ]
    return _render(cfg, "one-way optimum", summary, opt, checks)


@cli.command("twoway")
@_options
def cmd_twoway(grid_step, tol, seed, fmt, output_path):
    """Adaptive three-round protocol; ``--format csv`` emits the p sweep."""
    cfg = _config("twoway", grid_step, tol, seed, fmt, output_path)
    checks, opt = verify.twoway_checks(cfg.tolerance, cfg.grid_step)
    ps, errs = two_way_sweep(cfg.grid_step)
    status = EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY
    if cfg.format == "csv":
        rows = ["p,p_err"] + ["%.17g,%.17g" % (p, e) for p, e in zip(ps, errs)]
        _emit(cfg, "\n".join(rows) + "\n")
        return status
    summary = [("minimum error", sci(opt.error)), ("p*", sci(opt.p_star)),
               ("error at p = 1", sci(float(errs[-1])) if ps[-1] == 1.0 else "n/a"),
               ("sweep points", str(ps.size))]
    results = {"optimum": opt, "sweep": {"p": ps, "p_err": errs}}
    return _render(cfg, "two-way protocol", summary, results, checks)


@cli.command("nogo")
@_options
def cmd_nogo(grid_step, tol, seed, fmt, output_path):
    """Certificates ruling out an LOCC sequence approaching the SEP optimum."""
    cfg = _config("nogo", grid_step, tol, seed, fmt, output_path)
    checks, reports = verify.nogo_checks(cfg.tolerance, cfg.seed)
    summary = [
        (f"chi = {r.chi:g}",
         f"s_max {sci(r.s_max)}  bound {sci(r.min_ratio_bound)}  contradiction {r.contradiction}")
        for r in reports
    ]
    return _render(cfg, "no-go certificate", summary, {"reports": reports}, checks)


@cli.command("verify-all")
@_options
@click.option("--perturb-pgm", is_flag=True, hidden=True)
def cmd_verify_all(grid_step, tol, seed, fmt, output_path, perturb_pgm):
    """Run every invariant check and the strict chain of optima."""
    cfg = _config("verify-all", grid_step, tol, seed, fmt, output_path)
    povm = verify.perturbed_pgm() if perturb_pgm else None
    checks = verify.verify_all(cfg.tolerance, cfg.grid_step, cfg.seed, povm)
    by_name = {c.name: c.value for c in checks}
    summary = [
        ("GLOBAL", sci(by_name["global_error"])),
        ("SEP", sci(by_name["sep_error"])),
        ("two-way LOCC", sci(by_name["twoway_window"])),
        ("one-way LOCC", sci(by_name["oneway_error"])),
    ]
    failed = [c.name for c in checks if not c.passed]
    summary.append(("failed checks", ", ".join(failed) if failed else "none"))
    return _render(cfg, "verification summary", summary, {n: v for n, v in by_name.items()}, checks)


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="trine-lab", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
