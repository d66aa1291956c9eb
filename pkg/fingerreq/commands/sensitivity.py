"""sensitivity: peak-torque changes under grasp and friction perturbations."""

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import (
    EXISTING_FILE,
    OUTPUT_FILE,
    config_of,
    solver_from_flags,
)
from fingerreq.services.sensitivity import (
    BASELINE_FRICTION,
    sensitivity_friction,
    sensitivity_touchpoints,
)
from fingerreq.services.wrench_io import (
    DEFAULT_GRASP_LIBRARY,
    load_grasp_library,
    load_task,
)
from fingerreq.utils import canonical_json
from fingerreq.utils.decorators import handle_cli_errors
from fingerreq.utils.service_helpers import atomic_write

NON_NEGATIVE = click.FloatRange(min=0.0)


@register_command
@click.command("sensitivity")
@click.option("--task-file", required=True, type=EXISTING_FILE, help="Task JSON")
@click.option("--task", "task_name", default=None, help="Task name inside a suite file")
@click.option(
    "--grasp-library",
    type=EXISTING_FILE,
    default=str(DEFAULT_GRASP_LIBRARY),
    show_default=True,
)
@click.option(
    "--study",
    type=click.Choice(["touchpoints", "friction"]),
    default="touchpoints",
    show_default=True,
)
@click.option("--trials", type=click.IntRange(min=1), default=None)
@click.option("--pos-radius", type=NON_NEGATIVE, help="Contact shift (m)")
@click.option("--radius-delta", type=NON_NEGATIVE, help="Handle change (m)")
@click.option(
    "--mu",
    "mu_values",
    type=click.FloatRange(min=0.0, min_open=True),
    multiple=True,
    help="Friction coefficient to compare (repeatable, default 0.5 and 0.7)",
)
@click.option("--baseline-mu", type=float, default=BASELINE_FRICTION, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--restarts", type=click.IntRange(min=1), default=None)
@click.option("--freeze-positions", is_flag=True)
@click.option("--output", type=OUTPUT_FILE, help="Result JSON")
@click.pass_context
@handle_cli_errors
def sensitivity(
    ctx,
    task_file,
    task_name,
    grasp_library,
    study,
    trials,
    pos_radius,
    radius_delta,
    mu_values,
    baseline_mu,
    seed,
    restarts,
    freeze_positions,
    output,
):
    """Mean and spread of |Δ peak torque| under touch-point or friction changes."""
    config = config_of(ctx)
    options = solver_from_flags(
        ctx, seed=seed, restarts=restarts, freeze_positions=freeze_positions or None
    )
    task = load_task(task_file, task_name)
    library = load_grasp_library(grasp_library)

    if study == "touchpoints":
        shift = _pick(pos_radius, config, "SENSITIVITY_POS_RADIUS", 0.005)
        delta = _pick(radius_delta, config, "SENSITIVITY_RADIUS_DELTA", 0.005)
        result = sensitivity_touchpoints(
            task,
            library,
            options,
            trials=trials or int(config.get("SENSITIVITY_TRIALS", 10)),
            pos_radius=shift,
            radius_delta=delta,
            seed=options.seed,
            max_resamples=int(config.get("SENSITIVITY_MAX_RESAMPLES", 100)),
        )
        settings = {"pos_radius_m": shift, "radius_delta_m": delta}
    else:
        mu = tuple(mu_values) or (0.5, 0.7)
        result = sensitivity_friction(task, library, mu, options, baseline_mu)
        settings = {"mu_values": list(mu), "baseline_mu": baseline_mu}

    payload = {
        "task": task.name,
        "study": study,
        "seed": options.seed,
        **settings,
        **result.as_dict(),
    }
    text = canonical_json(payload)
    if output:
        atomic_write(output, text)
    click.echo(text, nl=False)


def _pick(value, config, key: str, default: float) -> float:
    return float(value) if value is not None else float(config.get(key, default))
