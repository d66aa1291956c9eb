"""Data fixtures for testing.

Trajectory files, task suites and the example files shipped in
``fingerreq/data``.
"""

import json

import numpy as np
import pytest

from fingerreq.config import DATA_DIR
from fingerreq.models.torque import JointTorqueTrajectory
from fingerreq.models.wrench import WrenchTrajectory

PROFILE_PATH = DATA_DIR / "profiles" / "everyday.json"
MEASUREMENTS_PATH = DATA_DIR / "measurements" / "two_finger_prototype.json"
ACTUATOR_DIR = DATA_DIR / "actuators"

VALID_WRENCH_CSV = """\
# recorded at 100 Hz
t,Fx,Fy,Fz,Tx,Ty,Tz
0.00,0.1,0.0,1.0,0.001,0.000,0.002
0.01,0.1,0.0,1.1,0.001,0.000,0.002
0.02,0.2,0.1,1.2,0.001,0.001,0.003
0.03,0.2,0.1,1.1,0.000,0.001,0.003
0.04,0.1,0.0,1.0,0.000,0.000,0.002
"""


def constant_wrench(n: int = 5, rate: float = 50.0, **components):
    """Trajectory repeating one wrench ``n`` times."""
    row = np.zeros(6)
    for index, name in enumerate(("F_x", "F_y", "F_z", "T_x", "T_y", "T_z")):
        row[index] = components.get(name, 0.0)
    return WrenchTrajectory(rate, np.tile(row, (n, 1)))


def torque_signal(values, rate: float = 100.0, joint: str = "PIP"):
    """Joint torque trajectory from raw samples."""
    return JointTorqueTrajectory(rate, joint, 0, np.asarray(values, dtype=float))


@pytest.fixture
def write_file(tmp_path):
    """Write text to a file below the temporary directory.

    Returns:
        Callable (name, text) -> Path
    """

    def _write(name, text):
        path = tmp_path / name
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def wrench_csv(write_file):
    """Well-formed five-sample wrench trajectory file."""
    return write_file("wrench.csv", VALID_WRENCH_CSV)


@pytest.fixture
def write_suite(write_file):
    """Write a task suite JSON from task dictionaries.

    Missing task fields default to a small Tripod1 task on the medium
    handle with a short zero trajectory.
    """

    def _write(*tasks, name="suite.json"):
        records = []
        for index, task in enumerate(tasks):
            record = {
                "name": f"Task {index}",
                "handle_size": "medium",
                "grasp": "Tripod1",
                "palm": False,
                "trajectory": "synthetic:zero?duration=0.1&rate=20",
            }
            record.update(task)
            records.append(record)
        return write_file(name, json.dumps({"name": "test-suite", "tasks": records}))

    return _write


@pytest.fixture
def write_json(write_file):
    """Write a JSON document to a temporary file."""

    def _write(name, document):
        return write_file(name, json.dumps(document))

    return _write


@pytest.fixture
def example_motor():
    """Motor matching the worked stiffness-window example.

    J = 1e-6 kg·m², N = 8, motor-side speed 10 rad/s.
    """
    return {
        "name": "example",
        "diameter": 0.02,
        "length": 0.01,
        "shear_stress": 20000.0,
        "gear_ratio": 8,
        "rotor_inertia": 1e-6,
        "max_speed": 10.0,
    }
