"""optimize-task: joint torque trajectories and bandwidths of one task."""

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import (
    EXISTING_FILE,
    format_value,
    output_dir,
    solver_from_flags,
    sweep_from_flags,
    sweep_options,
)
from fingerreq.models.finger import JOINT_NAMES
from fingerreq.services.pipeline import optimize_task as run_task
from fingerreq.services.pipeline import write_task_outputs
from fingerreq.services.wrench_io import (
    DEFAULT_GRASP_LIBRARY,
    load_grasp_library,
    load_task,
)
from fingerreq.utils.decorators import handle_cli_errors
from fingerreq.utils.error_handlers import PartialResultError


@register_command
@click.command("optimize-task")
@click.option("--task-file", required=True, type=EXISTING_FILE, help="Task JSON")
@click.option("--task", "task_name", default=None, help="Task name inside a suite file")
@click.option(
    "--grasp-library",
    type=EXISTING_FILE,
    default=str(DEFAULT_GRASP_LIBRARY),
    show_default=True,
)
@click.option("--output-dir", "output", default=None, help="Output directory")
@click.option("--seed", type=int, default=None, help="Solver seed")
@click.option("--restarts", type=click.IntRange(min=1), default=None)
@click.option(
    "--freeze-positions",
    is_flag=True,
    help="Keep contacts at their nominal positions",
)
@sweep_options
@click.pass_context
@handle_cli_errors
def optimize_task(
    ctx,
    task_file,
    task_name,
    grasp_library,
    output,
    seed,
    restarts,
    freeze_positions,
    **sweep,
):
    """Optimize the contact forces of a task and write its torque trajectories."""
    solver = solver_from_flags(
        ctx, seed=seed, restarts=restarts, freeze_positions=freeze_positions or None
    )
    sweep_opts = sweep_from_flags(ctx, sweep)
    task = load_task(task_file, task_name)
    library = load_grasp_library(grasp_library)

    outcome = run_task(task, library, solver, sweep_opts)
    directory = write_task_outputs(outcome, output_dir(ctx, output))

    summary = outcome.summary
    steps = outcome.requirements.n_steps
    click.echo(f"Task '{task.name}' ({steps} steps, seed {solver.seed})")
    for joint in JOINT_NAMES:
        torque = format_value(summary.peak_torque[joint], "N·m")
        bandwidth = format_value(summary.bandwidth[joint], "Hz")
        click.echo(f"  {joint:<6} peak {torque:<16} bandwidth {bandwidth}")
    click.echo(f"✓ Outputs written to {directory}")

    if outcome.partial:
        raise PartialResultError(
            outcome.requirements.warning,
            details={
                "infeasible_steps": outcome.requirements.infeasible_steps,
                "steps": outcome.requirements.n_steps,
            },
        )
