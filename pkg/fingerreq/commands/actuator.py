"""Actuator sizing commands: size-motor, gear-strength, sea-range and size.

Bandwidth flags and the ``bandwidth_hz`` field of SEA files are in Hz and
are converted to rad/s before the stiffness window is computed.
"""

import click

from fingerreq.commands import register_command
from fingerreq.commands.common import EXISTING_FILE, OUTPUT_FILE, format_value
from fingerreq.models.actuator import SizingReport
from fingerreq.schemas.actuator import GearSchema, MotorSchema, SeaSchema
from fingerreq.services.actuator_sizing import (
    collision_torque,
    gear_strength,
    motor_torque,
    natural_frequency,
    output_speed,
    required_gear_ratio,
    required_gear_width,
    sea_window,
    size_actuator,
    stiffness_verdict,
)
from fingerreq.services.bandwidth import hz_to_rad, rad_to_hz
from fingerreq.utils import canonical_json
from fingerreq.utils.decorators import handle_cli_errors, validate_file_input
from fingerreq.utils.service_helpers import atomic_write

POSITIVE = click.FloatRange(min=0.0, min_open=True)


def _echo_window(window) -> None:
    click.echo(f"k_min: {format_value(window.k_min, 'N·m/rad')}")
    click.echo(f"k_max: {format_value(window.k_max, 'N·m/rad')}")
    if window.feasible:
        click.echo("✓ Stiffness window is feasible")
    else:
        click.echo("✗ No stiffness meets both bandwidth and strength")


@register_command
@click.command("size-motor")
@click.option("--motor", required=True, type=EXISTING_FILE, help="Motor spec JSON")
@click.option(
    "--required-torque",
    type=POSITIVE,
    default=None,
    help="Joint torque (N·m) to find the smallest gear ratio for",
)
@handle_cli_errors
@validate_file_input("motor", MotorSchema)
def size_motor(motor, required_torque):
    """Output torque of a motor from its shear stress and geometry."""
    click.echo(f"motor: {motor.name or 'unnamed'}")
    click.echo(f"torque: {format_value(motor_torque(motor), 'N·m')}")
    click.echo(f"output_speed: {format_value(output_speed(motor), 'rad/s')}")
    if required_torque is not None:
        ratio = required_gear_ratio(motor, required_torque)
        click.echo(f"gear_ratio_for_{required_torque:g}_Nm: {ratio}")


@register_command
@click.command("gear-strength")
@click.option("--gear", required=True, type=EXISTING_FILE, help="Gear spec JSON")
@click.option(
    "--required-torque",
    type=POSITIVE,
    default=None,
    help="Torque (N·m) to find the required face width for",
)
@handle_cli_errors
@validate_file_input("gear", GearSchema)
def gear_strength_command(gear, required_torque):
    """Lewis bending strength of a spur gear."""
    click.echo(f"gear: {gear.name or 'unnamed'}")
    click.echo(f"strength: {format_value(gear_strength(gear), 'N·m')}")
    if required_torque is not None:
        width = required_gear_width(gear, required_torque)
        label = f"width_for_{required_torque:g}_Nm"
        click.echo(f"{label}: {format_value(width * 1000.0, 'mm')}")


@register_command
@click.command("sea-range")
@click.option("--motor", required=True, type=EXISTING_FILE, help="Motor spec JSON")
@click.option("--strength", required=True, type=POSITIVE, help="Strength (N·m)")
@click.option("--bandwidth", "bandwidth_hz", required=True, type=POSITIVE, help="Hz")
@click.option("--stiffness", type=POSITIVE, help="Candidate stiffness (N·m/rad)")
@handle_cli_errors
@validate_file_input("motor", MotorSchema)
def sea_range(motor, strength, bandwidth_hz, stiffness):
    """Series-elastic stiffness window between bandwidth and strength limits."""
    window = sea_window(motor, strength, hz_to_rad(bandwidth_hz))
    _echo_window(window)
    if stiffness is None:
        return
    collision = collision_torque(motor, stiffness)
    omega = natural_frequency(motor, stiffness)
    click.echo(f"verdict: {stiffness_verdict(window, stiffness)}")
    click.echo(f"collision_torque: {format_value(collision.torque, 'N·m')}")
    click.echo(f"max_deflection: {format_value(collision.deflection, 'rad')}")
    click.echo(
        f"natural_frequency: {format_value(omega, 'rad/s')} "
        f"({format_value(rad_to_hz(omega), 'Hz')})"
    )


def _report_payload(report: SizingReport) -> dict:
    return {
        "motor_torque_Nm": report.motor_torque,
        "gear_strength_Nm": report.gear_strength,
        "k_min_Nm_per_rad": report.window.k_min,
        "k_max_Nm_per_rad": report.window.k_max,
        "feasible": report.window.feasible,
        "verdict": report.verdict,
        "stiffness_Nm_per_rad": report.stiffness,
        "collision_torque_Nm": report.collision.torque,
        "max_deflection_rad": report.collision.deflection,
        "natural_frequency_rad_s": report.natural_frequency,
        "natural_frequency_Hz": report.natural_frequency_hz,
        "output_speed_rad_s": report.output_speed,
    }


@register_command
@click.command("size")
@click.option("--motor", required=True, type=EXISTING_FILE, help="Motor spec JSON")
@click.option("--sea", required=True, type=EXISTING_FILE, help="SEA spec JSON")
@click.option("--gear", type=EXISTING_FILE, default=None, help="Gear spec JSON")
@click.option("--output", type=OUTPUT_FILE, help="Report JSON")
@handle_cli_errors
@validate_file_input("motor", MotorSchema)
@validate_file_input("sea", SeaSchema)
@validate_file_input("gear", GearSchema)
def size(motor, sea, gear, output):
    """Combined motor, gear and series-elastic sizing report."""
    report = size_actuator(motor, sea, gear)
    payload = _report_payload(report)
    for key, value in payload.items():
        shown = value if isinstance(value, (str, bool)) else format_value(value)
        click.echo(f"{key}: {shown}")
    if output:
        atomic_write(output, canonical_json(payload))
