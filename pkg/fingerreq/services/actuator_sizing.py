"""Actuator Sizing Service.

Closed-form sizing of a finger joint actuator:

- motor torque from air-gap shear stress and active-region geometry
- spur gear bending strength (Lewis equation)
- series-elastic stiffness window between the bandwidth and strength limits
- collision torque and deflection when the rotor hits a hard stop
- natural frequency of rotor inertia on the elastic transmission

Usage:
    from fingerreq.services.actuator_sizing import size_actuator

    report = size_actuator(motor, sea, gear)
"""

import math
from dataclasses import replace
from typing import Optional

from fingerreq.models.actuator import (
    CollisionResult,
    GearSpec,
    MotorSpec,
    SeaSpec,
    SeaWindow,
    SizingReport,
)
from fingerreq.utils.logging_config import get_logger, log_diagnostic_event
from fingerreq.utils.service_helpers import require_positive

logger = get_logger(__name__)

VERDICT_OK = "stiff transmission ok"
VERDICT_SPRING = "spring required"
VERDICT_TOO_SOFT = "stiffer transmission required"
VERDICT_INFEASIBLE = "no spring satisfies both"


def motor_torque(spec: MotorSpec) -> float:
    """Output torque N · τ_em · (D/2) · (π D L) in N·m."""
    radius = spec.diameter / 2.0
    area = math.pi * spec.diameter * spec.length
    return spec.gear_ratio * spec.shear_stress * radius * area


def gear_strength(spec: GearSpec) -> float:
    """Lewis bending strength (D / 2SF) · m · γ · σ_y · w · N in N·m."""
    return (
        spec.pitch_diameter
        / (2.0 * spec.safety_factor)
        * spec.module
        * spec.lewis_factor
        * spec.yield_strength
        * spec.width
        * spec.ratio_to_output
    )


def sea_window(motor: MotorSpec, strength: float, bandwidth: float) -> SeaWindow:
    """Stiffness window of a series-elastic transmission.

    Args:
        motor: Motor (uses J_m, N and the motor-side max speed)
        strength: Allowed transmission torque (N·m)
        bandwidth: Required bandwidth B (rad/s)

    Returns:
        SeaWindow(k_min, k_max); ``feasible`` is False when k_min > k_max
    """
    require_positive(strength=strength, bandwidth=bandwidth)
    n = motor.gear_ratio
    j = motor.rotor_inertia
    k_min = bandwidth**2 * j * n**2
    k_max = strength**2 / ((n * motor.max_speed) ** 2 * j)
    window = SeaWindow(k_min, k_max)
    if not window.feasible:
        log_diagnostic_event(
            "sea_window_infeasible",
            f"No stiffness meets both bandwidth and strength for motor '{motor.name}'",
            {"k_min": k_min, "k_max": k_max},
        )
    return window


def collision_torque(motor: MotorSpec, stiffness: float) -> CollisionResult:
    """Peak torque and deflection when all rotor kinetic energy goes into the spring."""
    require_positive(stiffness=stiffness)
    speed = motor.gear_ratio * motor.max_speed
    return CollisionResult(
        torque=speed * math.sqrt(stiffness * motor.rotor_inertia),
        deflection=speed * math.sqrt(motor.rotor_inertia / stiffness),
    )


def natural_frequency(motor: MotorSpec, stiffness: float) -> float:
    """ω_n = sqrt(k / (J_m N²)) in rad/s."""
    require_positive(stiffness=stiffness)
    return math.sqrt(stiffness / (motor.rotor_inertia * motor.gear_ratio**2))


def output_speed(motor: MotorSpec) -> float:
    """Joint-side maximum speed (rad/s)."""
    return motor.max_speed / motor.gear_ratio


def required_gear_ratio(motor: MotorSpec, torque: float) -> int:
    """Smallest integer reduction at which the motor reaches ``torque``."""
    require_positive(torque=torque)
    per_unit = motor_torque(replace(motor, gear_ratio=1.0))
    return max(1, math.ceil(torque / per_unit - 1e-12))


def required_gear_width(gear: GearSpec, torque: float) -> float:
    """Face width (m) at which the Lewis strength equals ``torque``."""
    require_positive(torque=torque)
    return torque * gear.width / gear_strength(gear)


def stiffness_verdict(window: SeaWindow, stiffness: float) -> str:
    """Classify a transmission stiffness against its window."""
    if not window.feasible:
        return VERDICT_INFEASIBLE
    if stiffness > window.k_max:
        return VERDICT_SPRING
    if stiffness < window.k_min:
        return VERDICT_TOO_SOFT
    return VERDICT_OK


def size_actuator(
    motor: MotorSpec, sea: SeaSpec, gear: Optional[GearSpec] = None
) -> SizingReport:
    """Combined sizing of motor, gear and elastic transmission.

    The window uses the smaller of the SEA strength and the gear strength.
    Collision and natural frequency are evaluated at the SEA stiffness
    clipped into the window when the window is feasible.

    Args:
        motor: Motor spec
        sea: Transmission stiffness, strength and bandwidth target (rad/s)
        gear: Optional output gear

    Returns:
        SizingReport
    """
    strength_gear = gear_strength(gear) if gear is not None else None
    strength = sea.strength
    if strength_gear is not None:
        strength = min(strength, strength_gear)
    window = sea_window(motor, strength, sea.bandwidth_target)
    verdict = stiffness_verdict(window, sea.stiffness)

    stiffness = sea.stiffness
    if window.feasible:
        stiffness = min(max(stiffness, window.k_min), window.k_max)

    logger.info(
        f"Sized motor '{motor.name}': {verdict}",
        extra={
            "context": {
                "k_min": window.k_min,
                "k_max": window.k_max,
                "stiffness": stiffness,
            }
        },
    )
    return SizingReport(
        motor_torque=motor_torque(motor),
        gear_strength=strength_gear,
        window=window,
        verdict=verdict,
        stiffness=stiffness,
        collision=collision_torque(motor, stiffness),
        natural_frequency=natural_frequency(motor, stiffness),
        output_speed=output_speed(motor),
    )
