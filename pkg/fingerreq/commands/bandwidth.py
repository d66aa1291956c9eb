"""bandwidth: minimum first-order bandwidth of a joint torque trajectory."""

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import (
    EXISTING_FILE,
    OUTPUT_FILE,
    sweep_from_flags,
    sweep_options,
)
from fingerreq.models.finger import JOINT_NAMES
from fingerreq.services.bandwidth import (
    bandwidth_from_rise_time,
    bandwidth_sweep,
    bandwidth_to_csv,
    min_bandwidth,
    rise_time,
    sweep_to_csv,
)
from fingerreq.services.wrench_io import load_torque_trajectory
from fingerreq.utils.decorators import handle_cli_errors
from fingerreq.utils.service_helpers import atomic_write


@register_command
@click.command("bandwidth")
@click.option("--trajectory", required=True, type=EXISTING_FILE, help="t,torque CSV")
@click.option("--joint", type=click.Choice(JOINT_NAMES), default="PIP")
@click.option("--finger", type=click.IntRange(0, 2), default=0, show_default=True)
@click.option(
    "--method",
    type=click.Choice(["sweep", "rise-time"]),
    default="sweep",
    show_default=True,
    help="Grid search against the first-order model, or 0.35 / rise time of a step",
)
@click.option("--output", type=OUTPUT_FILE, help="Result CSV")
@click.option(
    "--sweep-csv",
    type=OUTPUT_FILE,
    help="Write the pass fraction of every grid point",
)
@sweep_options
@click.pass_context
@handle_cli_errors
def bandwidth(ctx, trajectory, joint, finger, method, output, sweep_csv, **sweep):
    """Find the lowest bandwidth that tracks a joint torque trajectory."""
    options = sweep_from_flags(ctx, sweep)
    reference = load_torque_trajectory(trajectory, joint, finger)

    if method == "rise-time":
        t_r = rise_time(reference)
        click.echo(f"rise_time_s={float(t_r)!r}")
        click.echo(f"bandwidth_Hz={float(bandwidth_from_rise_time(t_r))!r}")
        return

    result = min_bandwidth(reference, options)
    text = bandwidth_to_csv([(finger, joint, result)])
    if output:
        atomic_write(output, text)
    click.echo(text, nl=False)

    if sweep_csv:
        atomic_write(sweep_csv, sweep_to_csv(bandwidth_sweep(reference, options)))
