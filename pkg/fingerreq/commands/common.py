"""Options and helpers shared by several commands."""

from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click

from fingerreq.models.options import SolverOptions, SweepOptions

EXISTING_FILE = click.Path(exists=True, dir_okay=False)
EXISTING_DIR = click.Path(exists=True, file_okay=False)
OUTPUT_FILE = click.Path(dir_okay=False)


def sweep_options(f: Callable) -> Callable:
    """Bandwidth grid and tracking-criterion flags (Hz)."""
    options = [
        click.option("--sweep-start", type=float, help="First grid point (Hz)"),
        click.option("--sweep-stop", type=float, help="Last grid point (Hz)"),
        click.option("--sweep-step", type=float, default=None, help="Grid step (Hz)"),
        click.option(
            "--pass-fraction",
            type=click.FloatRange(0.0, 1.0, min_open=True),
            default=None,
            help="Share of samples that must stay inside the band",
        ),
        click.option(
            "--band-fraction",
            type=click.FloatRange(min=0.0),
            default=None,
            help="Band half-width as a fraction of max|torque|",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def config_of(ctx: click.Context) -> Dict[str, Any]:
    return ctx.obj["config"] if ctx.obj else {}


def sweep_from_flags(
    ctx: click.Context, flags: Dict[str, Optional[float]]
) -> SweepOptions:
    names = {
        "sweep_start": "start_hz",
        "sweep_stop": "stop_hz",
        "sweep_step": "step_hz",
        "pass_fraction": "pass_fraction",
        "band_fraction": "band_fraction",
    }
    overrides = {names[k]: v for k, v in flags.items() if k in names and v is not None}
    return SweepOptions.from_config(config_of(ctx), **overrides)


def solver_from_flags(ctx: click.Context, **flags: Any) -> SolverOptions:
    overrides = {k: v for k, v in flags.items() if v is not None}
    return SolverOptions.from_config(config_of(ctx), **overrides)


def output_dir(ctx: click.Context, value: Optional[str]) -> Path:
    return Path(value or config_of(ctx).get("OUTPUT_DIR", "results"))


def format_value(value: Optional[float], unit: str = "") -> str:
    if value is None:
        return "n/a"
    return f"{value:.6g} {unit}".rstrip()
