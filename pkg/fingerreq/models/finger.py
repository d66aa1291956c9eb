"""Finger kinematics.

Three-joint finger chain used to map contact forces on a handle into joint
torques. The chain is

    base -> MCP-Z (about base z) -> offset along y -> MCP-X (about local x)
         -> proximal link along y -> PIP (about local x) -> distal link along y

Positive flexion (MCP-X, PIP) rotates the links from +y toward +z, so the
local +z axis of the distal link is the fingertip pad side.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from fingerreq.utils.error_handlers import DomainError, InfeasibleError

JOINT_NAMES = ("MCP-Z", "MCP-X", "PIP")

_LIMIT_TOL = 1e-9
_REACH_TOL = 1e-12


def _rot_x(angle: float) -> np.ndarray:
    return Rotation.from_euler("x", angle).as_matrix()


def _rot_z(angle: float) -> np.ndarray:
    return Rotation.from_euler("z", angle).as_matrix()


def _wrap(angle: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


@dataclass(frozen=True)
class FingerGeometry:
    """Link lengths of the finger (m).

    Attributes:
        mcp_separation: Distance between the MCP-Z and MCP-X axes
        proximal_len: MCP-X to PIP
        distal_len: PIP to fingertip center of pressure
        fingertip_radius: Radius of the fingertip pad
    """

    mcp_separation: float = 0.022
    proximal_len: float = 0.045
    distal_len: float = 0.0335
    fingertip_radius: float = 0.008

    def __post_init__(self) -> None:
        lengths = ("mcp_separation", "proximal_len", "distal_len", "fingertip_radius")
        for name in lengths:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DomainError(
                    f"{name} must be strictly positive, got {value!r}",
                    details={"field": name},
                )

    @property
    def reach(self) -> float:
        """Total length of the straight chain."""
        return self.mcp_separation + self.proximal_len + self.distal_len


@dataclass(frozen=True)
class JointAngles:
    """Joint angles (rad)."""

    q_mcp_z: float = 0.0
    q_mcp_x: float = 0.0
    q_pip: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.q_mcp_z, self.q_mcp_x, self.q_pip], dtype=float)

    @classmethod
    def from_array(cls, values) -> "JointAngles":
        q = np.asarray(values, dtype=float).reshape(3)
        return cls(float(q[0]), float(q[1]), float(q[2]))


@dataclass(frozen=True)
class JointLimits:
    """Closed intervals per joint (rad)."""

    mcp_z: Tuple[float, float] = (-math.pi / 2.0, math.pi / 2.0)
    mcp_x: Tuple[float, float] = (0.0, 2.0 * math.pi / 3.0)
    pip: Tuple[float, float] = (0.0, 2.0 * math.pi / 3.0)

    def intervals(self) -> Tuple[Tuple[float, float], ...]:
        return (self.mcp_z, self.mcp_x, self.pip)

    def contains(self, q: JointAngles, tol: float = _LIMIT_TOL) -> bool:
        return all(
            lo - tol <= value <= hi + tol
            for value, (lo, hi) in zip(q.as_array(), self.intervals())
        )

    def check(self, q: JointAngles) -> None:
        """Raise DomainError naming the first joint outside its limits."""
        for name, value, (lo, hi) in zip(JOINT_NAMES, q.as_array(), self.intervals()):
            if not (lo - _LIMIT_TOL <= value <= hi + _LIMIT_TOL):
                raise DomainError(
                    f"{name} angle {value:.6g} rad outside limits [{lo:.6g}, {hi:.6g}]",
                    details={"joint": name, "value": float(value)},
                )


DEFAULT_LIMITS = JointLimits()


@dataclass(frozen=True, eq=False)
class RigidTransform:
    """Rotation plus translation mapping local coordinates to world."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        rotation = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        translation = np.asarray(self.translation, dtype=float).reshape(3)
        object.__setattr__(self, "rotation", rotation)
        object.__setattr__(self, "translation", translation)

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls()

    @classmethod
    def from_rotation(
        cls, rotation: Rotation, translation=(0.0, 0.0, 0.0)
    ) -> "RigidTransform":
        return cls(rotation.as_matrix(), np.asarray(translation, dtype=float))

    def apply(self, point) -> np.ndarray:
        return self.rotation @ np.asarray(point, dtype=float) + self.translation

    def inverse_apply(self, point) -> np.ndarray:
        return self.rotation.T @ (np.asarray(point, dtype=float) - self.translation)


@dataclass(frozen=True, eq=False)
class FingertipPose:
    """Fingertip center of pressure and distal-link orientation in world."""

    position: np.ndarray
    orientation: np.ndarray


@dataclass(frozen=True, eq=False)
class ContactFrame:
    """Orthonormal contact frame on the handle surface (world coordinates).

    Attributes:
        normal: Outward radial direction e_r
        axial: Handle axis direction e_z
        tangential: Circumferential direction e_theta
    """

    normal: np.ndarray
    axial: np.ndarray
    tangential: np.ndarray

    @property
    def rotation(self) -> np.ndarray:
        """Matrix whose columns are (normal, axial, tangential)."""
        return np.column_stack([self.normal, self.axial, self.tangential])


@dataclass(frozen=True, eq=False)
class _ChainState:
    origins: Tuple[np.ndarray, np.ndarray, np.ndarray]
    axes: Tuple[np.ndarray, np.ndarray, np.ndarray]
    tip: np.ndarray
    orientation: np.ndarray


def _chain(
    geom: FingerGeometry, q: JointAngles, base_pose: RigidTransform
) -> _ChainState:
    r_base = base_pose.rotation
    r1 = r_base @ _rot_z(q.q_mcp_z)
    p1 = base_pose.translation
    p2 = p1 + r1 @ np.array([0.0, geom.mcp_separation, 0.0])
    r2 = r1 @ _rot_x(q.q_mcp_x)
    p3 = p2 + r2 @ np.array([0.0, geom.proximal_len, 0.0])
    r3 = r2 @ _rot_x(q.q_pip)
    tip = p3 + r3 @ np.array([0.0, geom.distal_len, 0.0])
    return _ChainState(
        origins=(p1, p2, p3),
        axes=(r_base[:, 2], r1[:, 0], r2[:, 0]),
        tip=tip,
        orientation=r3,
    )


def forward_kinematics(
    geom: FingerGeometry,
    q: JointAngles,
    base_pose: Optional[RigidTransform] = None,
    limits: JointLimits = DEFAULT_LIMITS,
) -> FingertipPose:
    """Fingertip pose for the given joint angles.

    Args:
        geom: Finger geometry
        q: Joint angles
        base_pose: Pose of the MCP-Z joint frame (identity by default)
        limits: Joint limits to enforce

    Returns:
        FingertipPose in world coordinates

    Raises:
        DomainError: If q violates the joint limits
    """
    limits.check(q)
    state = _chain(geom, q, base_pose or RigidTransform.identity())
    return FingertipPose(position=state.tip, orientation=state.orientation)


def _planar_ik(
    geom: FingerGeometry, along: float, height: float
) -> Tuple[float, float]:
    dx = along - geom.mcp_separation
    l1, l2 = geom.proximal_len, geom.distal_len
    d_sq = dx * dx + height * height
    cos_q3 = (d_sq - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)
    q3 = math.acos(min(1.0, max(-1.0, cos_q3)))
    q2 = math.atan2(height, dx) - math.atan2(l2 * math.sin(q3), l1 + l2 * math.cos(q3))
    return _wrap(q2), q3


def _clamp_to_limits(q: JointAngles, limits: JointLimits) -> JointAngles:
    values = [
        min(hi, max(lo, value))
        for value, (lo, hi) in zip(q.as_array(), limits.intervals())
    ]
    return JointAngles.from_array(values)


def inverse_kinematics(
    geom: FingerGeometry,
    target,
    base_pose: Optional[RigidTransform] = None,
    limits: JointLimits = DEFAULT_LIMITS,
) -> JointAngles:
    """Joint angles placing the fingertip at ``target``.

    The flexion branch is always the one with the PIP bent toward the pad
    side (q_pip >= 0). The MCP-Z branch pointing the finger plane at the
    target is tried first, then the opposite one.

    Args:
        geom: Finger geometry
        target: World point (m)
        base_pose: Pose of the MCP-Z joint frame (identity by default)
        limits: Joint limits the solution must respect

    Returns:
        JointAngles

    Raises:
        InfeasibleError: If the target is outside the workspace, with the
            distance to the workspace attached
    """
    pose = base_pose or RigidTransform.identity()
    x, y, h = pose.inverse_apply(target)
    rho = math.hypot(x, y)
    q1_forward = math.atan2(-x, y) if rho > 0.0 else 0.0

    l1, l2 = geom.proximal_len, geom.distal_len
    best_gap = math.inf
    for along, q1 in ((rho, q1_forward), (-rho, _wrap(q1_forward + math.pi))):
        d = math.hypot(along - geom.mcp_separation, h)
        gap = max(d - (l1 + l2), abs(l1 - l2) - d)
        if gap > _REACH_TOL * geom.reach:
            best_gap = min(best_gap, gap)
            continue
        q2, q3 = _planar_ik(geom, along, h)
        candidate = JointAngles(q1, q2, q3)
        if limits.contains(candidate):
            return _clamp_to_limits(candidate, limits)
        best_gap = min(best_gap, 0.0)

    if best_gap > 0.0:
        raise InfeasibleError(
            f"Target is {best_gap:.6g} m outside the finger workspace",
            distance=best_gap,
        )
    raise InfeasibleError(
        "Target is reachable only outside the joint limits", distance=0.0
    )


def geometric_jacobian(
    geom: FingerGeometry, q: JointAngles, base_pose: Optional[RigidTransform] = None
) -> np.ndarray:
    """Translational Jacobian d(tip)/dq in world coordinates (3x3)."""
    state = _chain(geom, q, base_pose or RigidTransform.identity())
    columns = [
        np.cross(axis, state.tip - origin)
        for axis, origin in zip(state.axes, state.origins)
    ]
    return np.column_stack(columns)


def contact_jacobian(
    geom: FingerGeometry,
    q: JointAngles,
    frame: ContactFrame,
    base_pose: Optional[RigidTransform] = None,
) -> np.ndarray:
    """Contact Jacobian J such that J.T @ [N, f_z, f_theta] gives joint torques.

    Rows are the contact directions (normal, axial, tangential), columns the
    joints (MCP-Z, MCP-X, PIP). Contact moments are not modeled.
    """
    return frame.rotation.T @ geometric_jacobian(geom, q, base_pose)


def place_finger_base(
    geom: FingerGeometry,
    contact_point,
    frame: ContactFrame,
    posture: JointAngles,
) -> RigidTransform:
    """Base pose that puts the fingertip on a contact in a given posture.

    The distal link ends up tangential to the handle with its flexion axis
    parallel to the handle axis and the pad facing the handle surface.

    Args:
        geom: Finger geometry
        contact_point: World contact point (m)
        frame: Contact frame at that point
        posture: Nominal joint angles (MCP-Z is taken as zero)

    Returns:
        RigidTransform of the finger base
    """
    flex = posture.q_mcp_x + posture.q_pip
    pad_frame = np.column_stack([frame.axial, frame.tangential, -frame.normal])
    rotation = pad_frame @ _rot_x(flex).T
    local = JointAngles(0.0, posture.q_mcp_x, posture.q_pip)
    tip_local = _chain(geom, local, RigidTransform.identity()).tip
    translation = np.asarray(contact_point, dtype=float) - rotation @ tip_local
    return RigidTransform(rotation, translation)
