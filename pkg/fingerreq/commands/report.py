"""report: compare achieved design values against a requirements profile."""

from pathlib import Path

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import EXISTING_DIR, EXISTING_FILE, output_dir
from fingerreq.config import DATA_DIR
from fingerreq.schemas.base import load_json_document
from fingerreq.schemas.report import MeasurementsSchema, ProfileSchema
from fingerreq.services.report_service import (
    compare,
    derive_desired,
    load_suite_csv,
    render_table,
    summarize_tasks,
    write_report_csv,
)
from fingerreq.utils.decorators import handle_cli_errors
from fingerreq.utils.error_handlers import ConfigError

DEFAULT_PROFILE = DATA_DIR / "profiles" / "everyday.json"


@register_command
@click.command("report")
@click.option(
    "--profile",
    type=EXISTING_FILE,
    default=str(DEFAULT_PROFILE),
    show_default=True,
    help="Requirements profile JSON",
)
@click.option(
    "--measurements",
    required=True,
    type=EXISTING_FILE,
    help="Achieved values JSON",
)
@click.option("--results", type=EXISTING_DIR, help="Output directory of run-suite")
@click.option("--suite-csv", type=EXISTING_FILE, help="suite.csv of a run")
@click.option(
    "--derive-desired",
    "derive",
    is_flag=True,
    help="Take desired torques and bandwidths from the suite maxima",
)
@click.option("--output-dir", "output", default=None, help="Where report.csv goes")
@click.pass_context
@handle_cli_errors
def report(ctx, profile, measurements, results, suite_csv, derive, output):
    """Print a desired / achieved / pass table and write report.csv."""
    if results and suite_csv:
        raise ConfigError("Use either --results or --suite-csv, not both")
    suite_path = Path(results) / "suite.csv" if results else suite_csv
    if derive and suite_path is None:
        raise ConfigError("--derive-desired needs --results or --suite-csv")

    requirements = load_json_document(profile, ProfileSchema())
    achieved = load_json_document(measurements, MeasurementsSchema())

    tasks = ()
    if suite_path is not None:
        summary = summarize_tasks(load_suite_csv(suite_path))
        tasks = summary.tasks
        if derive:
            requirements = derive_desired(requirements, summary)

    design_report = compare(requirements, achieved, tasks)
    click.echo(render_table(design_report), nl=False)
    path = write_report_csv(design_report, output_dir(ctx, output) / "report.csv")
    click.echo(f"✓ Report written to {path}")
