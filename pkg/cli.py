"""
Command-line front end: ``python cli.py ...`` or ``flask pbg ...``.
"""

import functools
import json
import logging
import os
import sys

import click
from pydantic import ValidationError

from lib.errors import SimulationException
from lib.logs import init_logging
from lib.utils import HelperEncoder
from lib.validation import parse_validation_error
from sweeps import SweepSpec, list_presets, parameter_names, run_figure, run_sweep, write_sweep_csv
from sweeps.checks import LEVELS, run_checks
from sweeps.plotscript import plot_script

log = logging.getLogger(__name__)

UNITS_HELP = (
    "Units: lengths in mm, classical amplitudes A in 1e6 V/m, coherent correction amplitudes xi in 10 V/m "
    "(|xi|^2 is a mean photon number), couplings K and mismatches delta in 1/mm, phases phi in units of pi."
)


def handle_errors(func):
    """Turns simulator and validation failures into ``error: ...`` on stderr and exit status 1."""

    @functools.wraps(func)
    def inner(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as e:
            click.echo(f"error: {parse_validation_error(e)}", err=True)
        except (SimulationException, OSError, json.JSONDecodeError) as e:
            click.echo(f"error: {e}", err=True)
        sys.exit(1)

    return inner


@click.group(name="pbg", help=f"Photonic-band-gap waveguide parametric-process simulator.\n\n{UNITS_HELP}")
@click.option("-v", "--verbose", is_flag=True, help="Log solver progress (Newton iterations, quadrature, sampling).")
def pbg(verbose):
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)


# ==== commands ====
@pbg.command(help=f"Reproduce the sweeps of a figure preset (1-16), one CSV per panel.\n\n{UNITS_HELP}")
@click.argument("figure", type=click.IntRange(1, 16))
@click.option("--out", "out_dir", default="out", show_default=True, type=click.Path(file_okay=False))
@click.option("--steps", type=click.IntRange(min=100), help="RK4 steps over the whole structure.")
@click.option("--tol", type=click.FloatRange(min=0, min_open=True), help="Commutator residual tolerance.")
@click.option(
    "--classical", type=click.Choice(["analytic", "shooting"]), help="Override the preset's classical solver."
)
@click.option("--plot/--no-plot", default=True, show_default=True, help="Also write a matplotlib plot script.")
@click.option("--workers", type=click.IntRange(min=1), help="Worker processes per sweep.")
@handle_errors
def figure(figure, out_dir, steps, tol, classical, plot, workers):
    results = run_figure(
        figure, out_dir=out_dir, steps=steps, tol=tol, plot=plot, classical=classical, workers=workers
    )
    failed = 0
    for panel, result in results.items():
        click.echo(os.path.join(out_dir, f"{result.spec.name}.csv"))
        for row in result.failed:
            click.echo(f"panel {panel}, row {row.index}: {row.result.error}", err=True)
        failed += len(result.failed)
    if failed:
        click.echo(f"error: {failed} point(s) failed", err=True)
        sys.exit(1)


@pbg.command(help=f"Run a sweep file (JSON, schema_version 1) and write its CSV.\n\n{UNITS_HELP}")
@click.argument("sweep_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path; stdout when omitted.")
@click.option("--plot/--no-plot", default=False, show_default=True, help="Write a plot script next to --out.")
@click.option("--workers", type=click.IntRange(min=1), help="Worker processes.")
@handle_errors
def sweep(sweep_file, out, plot, workers):
    with open(sweep_file) as f:
        spec = SweepSpec.parse_obj(json.load(f))
    result = run_sweep(spec, workers)

    if out is None:
        write_sweep_csv(result, sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="") as f:
            write_sweep_csv(result, f)
        log.info(f"wrote {out}")
        if plot:
            script = plot_script(os.path.basename(out), result.parameter_columns, result.observable_columns)
            with open(os.path.splitext(out)[0] + ".py", "w", encoding="utf-8") as f:
                f.write(script)

    for row in result.failed:
        click.echo(f"row {row.index}: {row.result.error}", err=True)
    if result.failed:
        sys.exit(1)


@pbg.command(help="Run the self-checks and print a JSON report; exit status 2 if any check fails.")
@click.option("--level", type=click.Choice(LEVELS), default="fast", show_default=True)
@click.option("--seed", type=int, help="Seed of the randomised checks.")
@handle_errors
def check(level, seed):
    report = run_checks(level, seed)
    click.echo(json.dumps(report, cls=HelperEncoder, indent=2))
    if not report["passed"]:
        failed = ", ".join(c["name"] for c in report["checks"] if not c["passed"])
        click.echo(f"failed checks: {failed}", err=True)
        sys.exit(2)


@pbg.command(help="List the figure presets.")
@handle_errors
def presets():
    for preset in list_presets():
        panels = ", ".join(p.name for p in preset.panels)
        click.echo(f"{preset.figure:2d}  [{panels}]  {preset.caption}")


@pbg.command(help="List the parameter names a sweep may vary.")
def parameters():
    for name in parameter_names():
        click.echo(name)


def main():
    init_logging(sys.stderr)
    pbg()


if __name__ == "__main__":
    main()
