"""Grasp geometry: the cylindrical handle, contacts on it and grasp configs."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from fingerreq.models.finger import (
    ContactFrame,
    FingerGeometry,
    JointAngles,
    RigidTransform,
)
from fingerreq.utils.error_handlers import ConfigError, DomainError

HANDLE_RADII = {"small": 0.008, "medium": 0.015, "large": 0.022}

FINGER_PRESSURE_RADIUS = 0.008
PALM_PRESSURE_RADIUS = 0.012


@dataclass(frozen=True, eq=False)
class CylinderFrame:
    """Cylindrical handle.

    Angles are measured about ``axis`` starting from ``reference``, a unit
    vector perpendicular to the axis. Axial positions are measured from
    ``origin`` along ``axis``.
    """

    radius: float
    axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    origin: np.ndarray = field(default_factory=lambda: np.zeros(3))
    reference: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"Cylinder radius must be positive, got {self.radius!r}")
        axis = np.asarray(self.axis, dtype=float).reshape(3)
        if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
            raise DomainError("Cylinder axis must have unit norm")
        object.__setattr__(self, "axis", axis)
        origin = np.asarray(self.origin, dtype=float).reshape(3)
        object.__setattr__(self, "origin", origin)

        if self.reference is None:
            seed = np.eye(3)[0] if abs(axis[0]) < 0.9 else np.eye(3)[1]
        else:
            seed = np.asarray(self.reference, dtype=float).reshape(3)
        ref = seed - axis * float(axis @ seed)
        norm = np.linalg.norm(ref)
        if norm < 1e-12:
            raise DomainError("Cylinder reference direction is parallel to the axis")
        object.__setattr__(self, "reference", ref / norm)

    @property
    def binormal(self) -> np.ndarray:
        return np.cross(self.axis, self.reference)

    def radial(self, theta: float) -> np.ndarray:
        return math.cos(theta) * self.reference + math.sin(theta) * self.binormal

    def tangential(self, theta: float) -> np.ndarray:
        return -math.sin(theta) * self.reference + math.cos(theta) * self.binormal

    def surface_point(self, z: float, theta: float) -> np.ndarray:
        return self.origin + z * self.axis + self.radius * self.radial(theta)

    def contact_frame(self, theta: float) -> ContactFrame:
        return ContactFrame(
            normal=self.radial(theta),
            axial=self.axis.copy(),
            tangential=self.tangential(theta),
        )

    def with_radius(self, radius: float) -> "CylinderFrame":
        return CylinderFrame(radius, self.axis, self.origin, self.reference)


@dataclass(frozen=True)
class ContactPoint:
    """Nominal contact location on the handle surface."""

    nominal_z: float
    nominal_theta: float
    pressure_radius: float = FINGER_PRESSURE_RADIUS
    is_palm: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.pressure_radius) and self.pressure_radius > 0):
            raise DomainError("Contact pressure radius must be positive")


def surface_distance(radius: float, a: ContactPoint, b: ContactPoint) -> float:
    """Distance between two contact centers on the unrolled surface."""
    d_theta = math.remainder(a.nominal_theta - b.nominal_theta, 2.0 * math.pi)
    return math.hypot(a.nominal_z - b.nominal_z, radius * d_theta)


def overlapping_pairs(
    radius: float, contacts: Sequence[ContactPoint]
) -> List[Tuple[int, int]]:
    """Index pairs whose pressure circles intersect."""
    pairs = []
    for i in range(len(contacts)):
        for j in range(i + 1, len(contacts)):
            reach = contacts[i].pressure_radius + contacts[j].pressure_radius
            if surface_distance(radius, contacts[i], contacts[j]) <= reach:
                pairs.append((i, j))
    return pairs


@dataclass(frozen=True, eq=False)
class FingerPlacement:
    """One finger mounted so that it touches its nominal contact."""

    geometry: FingerGeometry
    base_pose: RigidTransform
    joint_angles: JointAngles


@dataclass(frozen=True, eq=False)
class GraspConfig:
    """A grasp instantiated on a specific handle.

    Finger contacts are listed first, in finger order; the palm contact, if
    any, is last and carries no finger.
    """

    cylinder: CylinderFrame
    contacts: Tuple[ContactPoint, ...]
    friction_mu: float
    fingers: Tuple[FingerPlacement, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "contacts", tuple(self.contacts))
        object.__setattr__(self, "fingers", tuple(self.fingers))
        palms = [c for c in self.contacts if c.is_palm]
        finger_contacts = [c for c in self.contacts if not c.is_palm]
        if len(finger_contacts) != 3:
            raise ConfigError(
                f"Grasp '{self.name}' needs exactly 3 finger contacts, "
                f"got {len(finger_contacts)}"
            )
        if len(palms) > 1:
            raise ConfigError(f"Grasp '{self.name}' has more than one palm contact")
        if palms and not self.contacts[-1].is_palm:
            raise ConfigError(f"Grasp '{self.name}' must list the palm contact last")
        if len(self.fingers) != 3:
            raise ConfigError(f"Grasp '{self.name}' needs 3 finger placements")
        if not (math.isfinite(self.friction_mu) and self.friction_mu > 0):
            raise DomainError(
                f"Friction coefficient must be positive, got {self.friction_mu!r}"
            )

    @property
    def has_palm(self) -> bool:
        return self.contacts[-1].is_palm

    @property
    def n_contacts(self) -> int:
        return len(self.contacts)

    def nominal_arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(z_bar, theta_bar, pressure_radius) as arrays over contacts."""
        z = np.array([c.nominal_z for c in self.contacts], dtype=float)
        theta = np.array([c.nominal_theta for c in self.contacts], dtype=float)
        r = np.array([c.pressure_radius for c in self.contacts], dtype=float)
        return z, theta, r


@dataclass(frozen=True, eq=False)
class ContactSolution:
    """Force distribution for one timestep.

    Arrays are indexed by contact (forces, positions) or by finger
    (``torques`` has shape (3, 3): finger x (MCP-Z, MCP-X, PIP)).
    """

    normal: np.ndarray
    f_theta: np.ndarray
    f_z: np.ndarray
    z: np.ndarray
    theta: np.ndarray
    torques: np.ndarray
    objective_value: float
    feasible: bool
    kkt_residual: float = 0.0
    max_violation: float = 0.0
    residual: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def force_norm(self) -> float:
        return float(np.sqrt(np.sum(self.normal**2 + self.f_theta**2 + self.f_z**2)))


DEFAULT_POSTURE = JointAngles(0.0, 0.6, 0.9)


@dataclass(frozen=True)
class GraspTemplate:
    """Library entry: contacts of a named grasp, palm contact included."""

    name: str
    contacts: Tuple[ContactPoint, ...]
    posture: Optional[JointAngles] = None
    description: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "contacts", tuple(self.contacts))

    def finger_contacts(self) -> Tuple[ContactPoint, ...]:
        return tuple(c for c in self.contacts if not c.is_palm)

    def palm_contact(self) -> Optional[ContactPoint]:
        palms = [c for c in self.contacts if c.is_palm]
        return palms[0] if palms else None


@dataclass(frozen=True)
class GraspLibrary:
    """Named grasp templates plus the finger geometry they are built with."""

    grasps: Tuple[GraspTemplate, ...]
    finger: FingerGeometry = field(default_factory=FingerGeometry)
    posture: JointAngles = DEFAULT_POSTURE

    def names(self) -> List[str]:
        return [g.name for g in self.grasps]

    def get(self, name: str) -> GraspTemplate:
        for grasp in self.grasps:
            if grasp.name == name:
                return grasp
        raise ConfigError(
            f"Unknown grasp '{name}'", details={"available": self.names()}
        )
