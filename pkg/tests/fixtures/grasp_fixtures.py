"""Grasp fixtures for testing.

Handles, contact layouts and solver options shared by the optimizer,
sensitivity and pipeline tests.
"""

import math

import pytest

from fingerreq.models.finger import FingerGeometry
from fingerreq.models.grasp import ContactPoint, CylinderFrame
from fingerreq.models.options import SolverOptions
from fingerreq.services.wrench_io import build_grasp_config, load_grasp_library

MEDIUM_RADIUS = 0.015
SYMMETRIC_ANGLES = (math.pi / 2, 7 * math.pi / 6, 11 * math.pi / 6)


def symmetric_contacts(z: float = 0.0):
    """Three finger contacts 120 degrees apart at the same height."""
    return [ContactPoint(z, theta) for theta in SYMMETRIC_ANGLES]


def symmetric_grasp(radius: float = MEDIUM_RADIUS, mu: float = 0.6):
    """Grasp with fingers evenly spaced around the handle."""
    return build_grasp_config(
        CylinderFrame(radius), symmetric_contacts(), mu, name="symmetric"
    )


@pytest.fixture
def finger_geometry():
    """Default finger geometry."""
    return FingerGeometry()


@pytest.fixture(scope="session")
def grasp_library():
    """Grasp library shipped with the package."""
    return load_grasp_library()


@pytest.fixture(scope="session")
def symmetric_config():
    """Symmetric three-finger grasp on the medium handle."""
    return symmetric_grasp()


@pytest.fixture(scope="session")
def one_sided_config():
    """All three fingers on the same side of the handle.

    Normal forces only contribute positive Fx, so a wrench with a
    negative Fx cannot be balanced.
    """
    contacts = [ContactPoint(z, 0.0) for z in (-0.02, 0.0, 0.02)]
    return build_grasp_config(
        CylinderFrame(MEDIUM_RADIUS), contacts, 0.6, name="one-sided"
    )


@pytest.fixture
def frozen_options():
    """Solver options with contact positions held at their nominal values."""
    return SolverOptions(freeze_positions=True, restarts=3)


@pytest.fixture
def fast_options():
    """Solver options for tests that only need a reasonable answer."""
    return SolverOptions(restarts=2, max_iter=200)
