"""run-suite: every task of a manifest, end to end."""

from dataclasses import replace
from pathlib import Path

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import EXISTING_FILE, config_of
from fingerreq.models.finger import JOINT_NAMES
from fingerreq.schemas.manifest import load_manifest
from fingerreq.services.pipeline import run_suite as run_pipeline
from fingerreq.utils.decorators import handle_cli_errors
from fingerreq.utils.error_handlers import PartialResultError


@register_command
@click.command("run-suite")
@click.option("--manifest", required=True, type=EXISTING_FILE, help="Run manifest JSON")
@click.option(
    "--jobs", type=int, default=None, help="Parallel tasks (-1 for all cores)"
)
@click.option("--output-dir", "output", default=None, help="Overrides the manifest")
@click.option("--seed", type=int, default=None, help="Overrides the manifest")
@click.pass_context
@handle_cli_errors
def run_suite(ctx, manifest, jobs, output, seed):
    """Optimize every task of a suite and write the requirement summaries."""
    if jobs is not None and (jobs == 0 or jobs < -1):
        raise click.BadParameter(
            "must be a positive integer or -1", param_hint="--jobs"
        )

    run = load_manifest(manifest, config_of(ctx))
    overrides = {}
    if jobs is not None:
        overrides["jobs"] = jobs
    if output is not None:
        overrides["output_dir"] = str(Path(output))
    if seed is not None:
        overrides["seed"] = seed
        overrides["solver"] = replace(run.solver, seed=seed)
    if overrides:
        run = replace(run, **overrides)

    result = run_pipeline(run)
    summary = result.summary
    click.echo(f"Suite '{run.name}': {len(summary.tasks)} tasks, seed {run.seed}")
    for joint in JOINT_NAMES:
        click.echo(
            f"  {joint:<6} max peak {summary.peak_torque[joint]:.4g} N·m"
            f"  max bandwidth {summary.bandwidth[joint]:.4g} Hz"
        )
    click.echo(f"✓ Outputs written to {result.output_dir}")

    if result.partial_tasks:
        raise PartialResultError(
            f"{len(result.partial_tasks)} task(s) "
            "exceeded the infeasible-step threshold",
            details={"tasks": ", ".join(result.partial_tasks)},
        )
