"""Domain models package.

Plain immutable data types shared by the services. Models are organized by
domain: finger kinematics, grasp geometry, wrench recordings, joint
torques, actuator specs and reports.
"""

from .actuator import (
    CollisionResult,
    GearSpec,
    MotorSpec,
    SeaSpec,
    SeaWindow,
    SizingReport,
)
from .finger import (
    ContactFrame,
    FingerGeometry,
    JointAngles,
    JointLimits,
    RigidTransform,
    contact_jacobian,
    forward_kinematics,
    geometric_jacobian,
    inverse_kinematics,
)
from .grasp import (
    ContactPoint,
    ContactSolution,
    CylinderFrame,
    FingerPlacement,
    GraspConfig,
)
from .report import (
    DesignReport,
    Measurement,
    Metric,
    RequirementsProfile,
    SuiteSummary,
    TaskSummary,
)
from .torque import BandwidthResult, JointTorqueTrajectory, TorqueRequirements
from .wrench import TaskConfig, Wrench, WrenchTrajectory

__all__ = [
    "BandwidthResult",
    "CollisionResult",
    "ContactFrame",
    "ContactPoint",
    "ContactSolution",
    "CylinderFrame",
    "DesignReport",
    "FingerGeometry",
    "FingerPlacement",
    "GearSpec",
    "GraspConfig",
    "JointAngles",
    "JointLimits",
    "JointTorqueTrajectory",
    "Measurement",
    "Metric",
    "MotorSpec",
    "RequirementsProfile",
    "RigidTransform",
    "SeaSpec",
    "SeaWindow",
    "SizingReport",
    "SuiteSummary",
    "TaskConfig",
    "TaskSummary",
    "TorqueRequirements",
    "Wrench",
    "WrenchTrajectory",
    "contact_jacobian",
    "forward_kinematics",
    "geometric_jacobian",
    "inverse_kinematics",
]
