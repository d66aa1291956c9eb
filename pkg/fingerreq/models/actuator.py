"""Actuator, transmission and series-elastic element specifications."""

import math
from dataclasses import dataclass, fields
from typing import Optional

from fingerreq.utils.error_handlers import DomainError

PASCAL_PER_BAR = 1e5


def _check_positive(spec) -> None:
    for f in fields(spec):
        value = getattr(spec, f.name)
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            if not (math.isfinite(value) and value > 0):
                raise DomainError(
                    f"{type(spec).__name__}.{f.name} must be positive, got {value!r}",
                    details={"field": f.name},
                )


@dataclass(frozen=True)
class MotorSpec:
    """Motor active-region geometry, shear stress, gearing and inertia.

    Attributes:
        diameter: Rotor/stator air-gap diameter D (m)
        length: Rotor/stator stack length L (m)
        shear_stress: Electromagnetic shear stress (Pa)
        gear_ratio: Reduction N from motor to joint
        rotor_inertia: Rotor inertia J_m (kg·m²)
        max_speed: Motor-side maximum speed (rad/s)
    """

    diameter: float
    length: float
    shear_stress: float
    gear_ratio: float = 1.0
    rotor_inertia: float = 1e-6
    max_speed: float = 100.0
    name: str = ""

    def __post_init__(self) -> None:
        _check_positive(self)

    @classmethod
    def from_bar(cls, shear_stress_bar: float, **kwargs) -> "MotorSpec":
        """Build a spec with the shear stress given in bar."""
        return cls(shear_stress=shear_stress_bar * PASCAL_PER_BAR, **kwargs)


@dataclass(frozen=True)
class GearSpec:
    """Spur gear for a Lewis bending-strength estimate.

    Attributes:
        pitch_diameter: D_gear (m)
        module: Tooth module (m)
        width: Face width (m)
        lewis_factor: Lewis form factor
        yield_strength: Material yield strength (Pa)
        safety_factor: SF >= 1
        ratio_to_output: Reduction from this gear to the joint
    """

    pitch_diameter: float
    module: float
    width: float
    lewis_factor: float
    yield_strength: float
    safety_factor: float = 2.0
    ratio_to_output: float = 1.0
    name: str = ""

    def __post_init__(self) -> None:
        _check_positive(self)
        if self.safety_factor < 1.0:
            raise DomainError("GearSpec.safety_factor must be at least 1")


@dataclass(frozen=True)
class SeaSpec:
    """Series-elastic element.

    Attributes:
        stiffness: k_theta (N·m/rad)
        strength: Allowed transmission torque (N·m)
        bandwidth_target: Required bandwidth B (rad/s)
    """

    stiffness: float
    strength: float
    bandwidth_target: float
    name: str = ""

    def __post_init__(self) -> None:
        _check_positive(self)


@dataclass(frozen=True)
class SeaWindow:
    """Stiffness range meeting both bandwidth and strength (N·m/rad)."""

    k_min: float
    k_max: float

    @property
    def feasible(self) -> bool:
        return self.k_min <= self.k_max

    def contains(self, stiffness: float) -> bool:
        return self.k_min <= stiffness <= self.k_max


@dataclass(frozen=True)
class CollisionResult:
    """Peak torque and deflection when the moving rotor hits a stop."""

    torque: float
    deflection: float


@dataclass(frozen=True)
class SizingReport:
    """Combined motor, gear and SEA sizing results."""

    motor_torque: float
    gear_strength: Optional[float]
    window: SeaWindow
    verdict: str
    stiffness: float
    collision: CollisionResult
    natural_frequency: float
    output_speed: float

    @property
    def natural_frequency_hz(self) -> float:
        return self.natural_frequency / (2.0 * math.pi)
