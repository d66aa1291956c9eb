"""Unit tests for the finger kinematic chain."""

import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from fingerreq.models.finger import (
    FingerGeometry,
    JointAngles,
    JointLimits,
    RigidTransform,
    contact_jacobian,
    forward_kinematics,
    geometric_jacobian,
    inverse_kinematics,
    place_finger_base,
)
from fingerreq.models.grasp import DEFAULT_POSTURE, CylinderFrame
from fingerreq.utils.error_handlers import DomainError, InfeasibleError

REACHABLE_POSTURES = [
    JointAngles(0.0, 0.6, 0.9),
    JointAngles(0.3, 0.5, 0.8),
    JointAngles(-0.4, 1.2, 0.3),
    JointAngles(1.0, 0.2, 1.5),
]


@pytest.mark.unit
class TestFingerGeometry:
    """Test geometry validation."""

    def test_reach_is_sum_of_links(self, finger_geometry):
        """Test reach of the default finger."""
        assert finger_geometry.reach == pytest.approx(0.022 + 0.045 + 0.0335)

    @pytest.mark.parametrize("field", ["mcp_separation", "proximal_len", "distal_len"])
    def test_non_positive_length_rejected(self, field):
        """Test that zero link lengths raise DomainError."""
        with pytest.raises(DomainError) as exc_info:
            FingerGeometry(**{field: 0.0})

        assert exc_info.value.details["field"] == field


@pytest.mark.unit
class TestForwardKinematics:
    """Test forward kinematics."""

    def test_straight_finger(self, finger_geometry):
        """Test that zero angles stretch the finger along +y."""
        pose = forward_kinematics(finger_geometry, JointAngles())

        expected = [0.0, finger_geometry.reach, 0.0]
        np.testing.assert_allclose(pose.position, expected, atol=1e-15)
        np.testing.assert_allclose(pose.orientation, np.eye(3), atol=1e-15)

    def test_flexion_moves_toward_pad_side(self, finger_geometry):
        """Test that a right-angle MCP flexion points the links along +z."""
        pose = forward_kinematics(finger_geometry, JointAngles(0.0, math.pi / 2, 0.0))

        expected_height = finger_geometry.proximal_len + finger_geometry.distal_len
        np.testing.assert_allclose(
            pose.position,
            [0.0, finger_geometry.mcp_separation, expected_height],
            atol=1e-12,
        )

    def test_base_pose_is_applied(self, finger_geometry):
        """Test that the base pose moves the whole chain rigidly."""
        q = JointAngles(0.2, 0.7, 0.4)
        base = RigidTransform.from_rotation(
            Rotation.from_euler("xyz", [0.3, -0.2, 1.1]), translation=[0.1, -0.05, 0.02]
        )

        local = forward_kinematics(finger_geometry, q)
        world = forward_kinematics(finger_geometry, q, base)

        np.testing.assert_allclose(
            world.position, base.apply(local.position), atol=1e-12
        )

    def test_joint_limits_enforced(self, finger_geometry):
        """Test that angles outside the limits raise DomainError."""
        with pytest.raises(DomainError) as exc_info:
            forward_kinematics(finger_geometry, JointAngles(0.0, -0.5, 0.3))

        assert exc_info.value.details["joint"] == "MCP-X"

    def test_custom_limits(self, finger_geometry):
        """Test that wider limits accept a hyperextended MCP-X."""
        limits = JointLimits(mcp_x=(-0.5, 2.0))

        q = JointAngles(0.0, -0.5, 0.3)
        pose = forward_kinematics(finger_geometry, q, limits=limits)

        assert np.all(np.isfinite(pose.position))


@pytest.mark.unit
class TestInverseKinematics:
    """Test inverse kinematics."""

    @pytest.mark.parametrize("q", REACHABLE_POSTURES)
    def test_round_trip(self, finger_geometry, q):
        """Test that IK reaches the point produced by FK."""
        target = forward_kinematics(finger_geometry, q).position

        solution = inverse_kinematics(finger_geometry, target)
        reached = forward_kinematics(finger_geometry, solution).position

        assert np.linalg.norm(reached - target) <= 1e-9

    @pytest.mark.parametrize("q", REACHABLE_POSTURES)
    def test_round_trip_with_base_pose(self, finger_geometry, q):
        """Test the round trip for a rotated and translated base."""
        base = RigidTransform.from_rotation(
            Rotation.from_euler("zyx", [0.8, 0.1, -0.6]),
            translation=[0.03, 0.01, -0.02],
        )
        target = forward_kinematics(finger_geometry, q, base).position

        solution = inverse_kinematics(finger_geometry, target, base)
        reached = forward_kinematics(finger_geometry, solution, base).position

        assert np.linalg.norm(reached - target) <= 1e-9

    def test_solution_respects_limits(self, finger_geometry):
        """Test that the returned angles lie inside the default limits."""
        q = JointAngles(0.3, 0.5, 0.8)
        target = forward_kinematics(finger_geometry, q).position

        solution = inverse_kinematics(finger_geometry, target)

        assert JointLimits().contains(solution)
        assert solution.q_pip >= 0.0

    def test_unreachable_target_reports_distance(self, finger_geometry):
        """Test that a far target raises InfeasibleError with its distance."""
        with pytest.raises(InfeasibleError) as exc_info:
            inverse_kinematics(finger_geometry, [0.0, 1.0, 0.0])

        assert exc_info.value.distance == pytest.approx(1.0 - finger_geometry.reach)
        assert exc_info.value.exit_code == 1


@pytest.mark.unit
class TestJacobians:
    """Test the geometric and contact Jacobians."""

    @pytest.mark.parametrize("q", REACHABLE_POSTURES)
    def test_matches_finite_differences(self, finger_geometry, q):
        """Test the analytic Jacobian against central differences."""
        step = 1e-6
        base = q.as_array()
        columns = []
        for index in range(3):
            offset = np.zeros(3)
            offset[index] = step
            plus_q = JointAngles.from_array(base + offset)
            minus_q = JointAngles.from_array(base - offset)
            plus = forward_kinematics(finger_geometry, plus_q)
            minus = forward_kinematics(finger_geometry, minus_q)
            columns.append((plus.position - minus.position) / (2 * step))

        np.testing.assert_allclose(
            geometric_jacobian(finger_geometry, q), np.column_stack(columns), atol=1e-8
        )

    def test_contact_jacobian_maps_forces_to_torques(self, finger_geometry):
        """Test that contact-frame forces give the same torques as world forces."""
        cylinder = CylinderFrame(0.015)
        frame = cylinder.contact_frame(0.7)
        q = JointAngles(0.1, 0.6, 0.9)
        local_force = np.array([1.5, -0.3, 0.4])

        world_force = frame.rotation @ local_force
        expected = geometric_jacobian(finger_geometry, q).T @ world_force

        np.testing.assert_allclose(
            contact_jacobian(finger_geometry, q, frame).T @ local_force,
            expected,
            atol=1e-15,
        )


@pytest.mark.unit
class TestVirtualWork:
    """Test that contact forces and joint torques exchange the same power."""

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("q", REACHABLE_POSTURES)
    def test_power_balance(self, finger_geometry, q, seed):
        """Test f . (J qdot) == (J^T f) . qdot for random forces and rates."""
        rng = np.random.default_rng(seed)
        frame = CylinderFrame(0.015).contact_frame(rng.uniform(0.0, 2 * math.pi))
        force = rng.normal(size=3)
        rates = rng.normal(size=3)

        jacobian = contact_jacobian(finger_geometry, q, frame)

        assert force @ (jacobian @ rates) == pytest.approx(
            (jacobian.T @ force) @ rates, abs=1e-12
        )

    @pytest.mark.parametrize("q", REACHABLE_POSTURES)
    def test_zero_force_gives_zero_torque(self, finger_geometry, q):
        """Test that an unloaded contact needs no joint torque."""
        frame = CylinderFrame(0.015).contact_frame(0.3)

        torques = contact_jacobian(finger_geometry, q, frame).T @ np.zeros(3)

        np.testing.assert_array_equal(torques, np.zeros(3))


@pytest.mark.unit
class TestFingerPlacement:
    """Test mounting a finger on a handle contact."""

    @pytest.mark.parametrize("theta", [0.0, 1.2, math.pi, 5.0])
    def test_fingertip_lands_on_contact(self, finger_geometry, theta):
        """Test that the placed finger touches the contact in its posture."""
        cylinder = CylinderFrame(0.015)
        point = cylinder.surface_point(0.004, theta)
        frame = cylinder.contact_frame(theta)

        base = place_finger_base(finger_geometry, point, frame, DEFAULT_POSTURE)
        pose = forward_kinematics(finger_geometry, DEFAULT_POSTURE, base)

        np.testing.assert_allclose(pose.position, point, atol=1e-12)
        # pad faces the handle, flexion axis along the handle
        np.testing.assert_allclose(pose.orientation[:, 2], -frame.normal, atol=1e-12)
        np.testing.assert_allclose(pose.orientation[:, 0], frame.axial, atol=1e-12)
