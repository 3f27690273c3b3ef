# -*- encoding: utf-8 -*-
"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 13/06/2023
 * Time: 09:30
 *
 * Edited by: eniocc
 * Date: 18/06/2023
 * Time: 16:54
"""
import logging
from typing import Optional

import click
import pandas as pd

from ltlab.core import Core
from ltlab.core.Config import CONFIG_ENV, SUITES, TOWER_CATALOG, Config
from ltlab.core.Errors import ConfigError, LtlabError
from ltlab.core.Report import Report
from ltlab.core.Suites import DEFAULT_MEASURES, DEFAULT_SAMPLES
from ltlab.core.Utils import setup_logging

_logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def common_options(command):
    """Field, precision, run and output flags shared by every subcommand."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False),
                     help=f"INI config file (default: ${CONFIG_ENV})."),
        click.option("--p", "p", type=int, help="The prime p."),
        click.option("--tower", help=f"Catalog tower ({', '.join(TOWER_CATALOG)}) or a JSON polynomial list."),
        click.option("--frobenius", help="special, cyclotomic or a JSON coefficient list."),
        click.option("--prec", "padic_digits", type=int, help="p-adic digits (pi-adic precision)."),
        click.option("--series-order", type=int, help="Power series truncation order."),
        click.option("--level", type=int, help="Character and torsion level (at most 2)."),
        click.option("--seed", type=int, help="Seed of the random generators."),
        click.option("--out", type=click.Path(dir_okay=False), help="Write the JSON report to this path."),
        click.option("--json", "as_json", is_flag=True, help="Print the JSON report to stdout."),
        click.option("--log-level", help="Logging level (default WARNING)."),
        click.option("--allow-skip", is_flag=True, default=None, help="Report unsupported checks as skipped."),
        click.option("--no-progress", is_flag=True, help="Hide progress bars."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _load_config(config_path: Optional[str], **overrides) -> Config:
    try:
        config = Config.create_config(config_path, **overrides)
    except ConfigError as e:
        click.echo(f"configuration error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_CONFIG)
    setup_logging(config.log_level)
    _logger.debug("configuration %s", config.echo())
    return config


def _emit(report: Report, as_json: bool, out: Optional[str], frame: Optional[pd.DataFrame] = None) -> None:
    if out:
        Core.write_report(report, out)
    if as_json:
        click.echo(report.to_json())
        return
    if frame is not None:
        click.echo(frame.to_string(index=False))
    elif report.results and not report.checks:
        click.echo(report.to_json())
    summary = report.summary()
    click.echo(f"{summary['pass']} passed, {summary['fail']} failed, {summary['skipped']} skipped")
    for record in report.checks:
        if record.status == "fail":
            click.echo(f"FAILED {record.id}: {record.ref}" + (f" ({record.reason})" if record.reason else ""))


def _finish(report: Report, as_json: bool, out: Optional[str], frame: Optional[pd.DataFrame] = None) -> None:
    _emit(report, as_json, out, frame)
    raise click.exceptions.Exit(report.exit_code())


def _guarded(call):
    try:
        return call()
    except ConfigError as e:
        click.echo(f"configuration error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_CONFIG)
    except LtlabError as e:
        click.echo(f"error: {e}", err=True)
        raise click.exceptions.Exit(EXIT_FAILED)


def _overrides(kwargs: dict) -> dict:
    keys = ("p", "tower", "frobenius", "padic_digits", "series_order", "level", "seed", "log_level", "allow_skip")
    return {k: kwargs.get(k) for k in keys}


@click.group()
@click.version_option(package_name="ltlab")
def cli():
    """Exact Lubin-Tate, (phi, Gamma) and epsilon-constant computations."""


@cli.command("group-law")
@click.option("--order", type=int, help="Truncation order of F, log_LT and exp_LT.")
@common_options
def group_law(order, config_path, out, as_json, no_progress, **kwargs):
    """Emit F(X, Y), log_LT, exp_LT and [a](Z)."""
    config = _load_config(config_path, **_overrides(kwargs))
    report = _guarded(lambda: Core.run("group-law", config, order=order))
    if not as_json and not out:
        click.echo(report.results["group_law"])
    _finish(report, as_json, out)


@cli.command()
@common_options
def torsion(config_path, out, as_json, no_progress, **kwargs):
    """Torsion tower data up to --level."""
    config = _load_config(config_path, **_overrides(kwargs))
    report = _guarded(lambda: Core.run("torsion", config, level=config.level))
    _finish(report, as_json, out)


@cli.command()
@click.argument("table", type=click.Choice(["gauss", "equivariant"]), default="gauss")
@click.option("--conductor", type=click.IntRange(0, 2), default=1, show_default=True)
@click.option("--all-characters", is_flag=True, help="Include characters of smaller conductor.")
@common_options
def eps(table, conductor, all_characters, config_path, out, as_json, no_progress, **kwargs):
    """Gauss-sum epsilon tables and equivariant epsilon tuples."""
    config = _load_config(config_path, **_overrides(kwargs))
    report, frame = _guarded(lambda: Core.eps_report(config, table, conductor, all_characters))
    _finish(report, as_json, out, frame)


@cli.command()
@click.option("--degree-bound", type=click.IntRange(0), default=3, show_default=True)
@common_options
def coh(degree_bound, config_path, out, as_json, no_progress, **kwargs):
    """Finite-model cohomology and the expected dimension tables."""
    config = _load_config(config_path, **_overrides(kwargs))
    report, frame = _guarded(lambda: Core.coh_report(config, degree_bound))
    _finish(report, as_json, out, frame)


@cli.command()
@click.option("--count", type=click.IntRange(1), default=2, show_default=True)
@common_options
def dist(count, config_path, out, as_json, no_progress, **kwargs):
    """Amice and Mellin transforms of seeded random measures."""
    config = _load_config(config_path, **_overrides(kwargs))
    report = _guarded(lambda: Core.run("dist", config, count=count))
    _finish(report, as_json, out)


@cli.command()
@click.option("--suite", "suites", multiple=True, type=click.Choice(("all",) + SUITES),
              help="Suite to run; repeat for several (default: all).")
@click.option("--samples", type=click.IntRange(1), default=DEFAULT_SAMPLES, show_default=True,
              help="Randomized inputs per identity.")
@click.option("--measures", type=click.IntRange(1), default=DEFAULT_MEASURES, show_default=True,
              help="Random measures per configuration.")
@click.option("--standard", is_flag=True, default=False,
              help="Run over the standard configurations (3,1,1) at level 2, (5,1,1) and (3,2,1).")
@common_options
def verify(suites, samples, measures, standard, config_path, out, as_json, no_progress, **kwargs):
    """Run verification suites; exit 1 when a check fails."""
    overrides = _overrides(kwargs)
    overrides["suites"] = list(suites) or None
    config = _load_config(config_path, **overrides)
    progress = not no_progress and not as_json
    report = _guarded(lambda: Core.run("verify", config, progress=progress, samples=samples, measures=measures,
                                       standard=standard))
    frame = None if as_json else report.summary_frame()
    _finish(report, as_json, out, frame)


def main():
    cli(prog_name="ltlab")


if __name__ == "__main__":
    main()
