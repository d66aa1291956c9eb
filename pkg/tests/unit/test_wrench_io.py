"""Unit tests for trajectory files, task suites and synthetic trajectories."""

import json

import numpy as np
import pytest

from fingerreq.models.torque import JointTorqueTrajectory
from fingerreq.services import synthetic
from fingerreq.services.wrench_io import (
    DEFAULT_TASK_SUITE,
    grasp_contacts,
    grasp_from_config,
    load_task,
    load_task_suite,
    load_torque_trajectory,
    load_trajectory,
    save_torque_trajectory,
    save_trajectory,
    trajectory_to_csv,
)
from fingerreq.utils.error_handlers import ConfigError, ParseError
from tests.fixtures.data_fixtures import constant_wrench

HEADER = "t,Fx,Fy,Fz,Tx,Ty,Tz\n"

# (task, handle size, grasp, palm) of every shipped task
EVERYDAY_TASKS = [
    ("stir with spatula", "large", "L-Pinch", True),
    ("sprinkle, shake pepper", "medium", "Tripod1", True),
    ("spread/oil", "small", "M-Pinch", False),
    ("vertical cut", "large", "L-Pinch", True),
    ("use spoon to pick up", "small", "Tripod3", False),
    ("pizza wheel", "medium", "Tripod2", True),
    ("use black brush", "medium", "M-Pinch", True),
    ("spear object using fork", "small", "L-Pinch", True),
    ("stir water using spoon", "small", "M-Pinch", True),
    ("fasten screw with screwdriver", "medium", "M-Pinch", True),
    ("loosen screw with screwdriver", "medium", "M-Pinch", True),
    ("unlock lock with key", "small", "Tripod1", False),
    ("fasten nut with wrench", "medium", "L-Pinch", True),
    ("use paint brush to dip and spread", "medium", "M-Pinch", True),
    ("use hammer to hammer in nail", "large", "L-Pinch", True),
    ("brush teeth", "medium", "M-Pinch", True),
    ("use file to file wooden thing", "medium", "L-Pinch", True),
    ("comb hair", "medium", "L-Pinch", True),
    ("scrape substance from surface", "large", "L-Pinch", True),
    ("peel cucumber/potato", "medium", "L-Pinch", True),
    ("slice cucumber", "medium", "L-Pinch", True),
    ("flip bread", "medium", "Tripod3", False),
    ("use spoon to scoop and pour", "medium", "M-Pinch", True),
    ("shave object", "medium", "L-Pinch", True),
    ("use roller to roll out dough", "large", "M-Pinch", True),
    ("loosen nut with wrench", "medium", "L-Pinch", True),
    ("scoop and pour with measuring spoon/cup", "medium", "M-Pinch", True),
    ("insert peg into pegboard", "small", "Tripod1", False),
    ("brush powder accross grey tray", "small", "M-Pinch", True),
    ("insert straw through to-go cup lid", "small", "M-Pinch", True),
]


@pytest.mark.unit
class TestLoadTrajectory:
    """Test wrench CSV parsing."""

    def test_valid_file(self, wrench_csv):
        """Test loading a well-formed file with a comment line."""
        traj = load_trajectory(wrench_csv)

        assert len(traj) == 5
        assert traj.sample_rate == pytest.approx(100.0)
        assert traj[2].F_z == pytest.approx(1.2)
        assert traj[4].T_z == pytest.approx(0.002)

    def test_missing_file(self, tmp_path):
        """Test that the missing path is named."""
        path = tmp_path / "absent.csv"

        with pytest.raises(ParseError) as exc_info:
            load_trajectory(path)

        assert str(path) in exc_info.value.message
        assert exc_info.value.exit_code == 1

    def test_missing_column(self, write_file):
        """Test that a missing wrench column is reported by name."""
        path = write_file("bad.csv", "t,Fx,Fy,Fz,Tx,Ty\n0,0,0,0,0,0\n0.1,0,0,0,0,0\n")

        with pytest.raises(ParseError) as exc_info:
            load_trajectory(path)

        assert exc_info.value.details["column"] == "Tz"

    def test_non_numeric_cell(self, write_file):
        """Test that the offending row and column are reported."""
        path = write_file("bad.csv", HEADER + "0,0,0,1,0,0,0\n0.1,0,0,abc,0,0,0\n")

        with pytest.raises(ParseError) as exc_info:
            load_trajectory(path)

        assert exc_info.value.details["row"] == 3
        assert exc_info.value.details["column"] == "Fz"

    def test_empty_cell(self, write_file):
        """Test that a missing value is rejected."""
        path = write_file("bad.csv", HEADER + "0,0,0,1,0,0,0\n0.1,0,0,1,0,0,\n")

        with pytest.raises(ParseError) as exc_info:
            load_trajectory(path)

        assert exc_info.value.details["column"] == "Tz"

    def test_time_not_increasing(self, write_file):
        """Test that repeated timestamps are rejected."""
        path = write_file(
            "bad.csv", HEADER + "0,0,0,1,0,0,0\n0.1,0,0,1,0,0,0\n0.1,0,0,1,0,0,0\n"
        )

        with pytest.raises(ParseError) as exc_info:
            load_trajectory(path)

        assert exc_info.value.details["column"] == "t"

    def test_non_uniform_sampling(self, write_file):
        """Test that uneven time steps are rejected."""
        rows = "0,0,0,1,0,0,0\n0.1,0,0,1,0,0,0\n0.3,0,0,1,0,0,0\n0.4,0,0,1,0,0,0\n"
        path = write_file("bad.csv", HEADER + rows)

        with pytest.raises(ParseError, match="not uniform"):
            load_trajectory(path)

    def test_single_sample(self, write_file):
        """Test that one sample is not a trajectory."""
        path = write_file("bad.csv", HEADER + "0,0,0,1,0,0,0\n")

        with pytest.raises(ParseError):
            load_trajectory(path)

    def test_empty_file(self, write_file):
        """Test that a file without a header is rejected."""
        with pytest.raises(ParseError):
            load_trajectory(write_file("empty.csv", ""))

    def test_synthetic_reference(self):
        """Test that synthetic references are generated instead of read."""
        traj = load_trajectory("synthetic:constant?scale=2&duration=0.2&rate=10")

        assert len(traj) == 3
        np.testing.assert_allclose(traj.samples[1], 2 * synthetic.BASE_WRENCH)


@pytest.mark.unit
class TestSaveTrajectory:
    """Test trajectory writers."""

    def test_save_and_load(self, tmp_path):
        """Test that a written file loads back to the same samples."""
        original = synthetic.from_reference("synthetic:sinusoid?duration=0.5&rate=20")

        path = save_trajectory(original, tmp_path / "out" / "wrench.csv", seed=7)
        loaded = load_trajectory(path)

        assert path.read_text().startswith("# seed=7\n")
        np.testing.assert_allclose(loaded.samples, original.samples, rtol=0, atol=0)
        assert loaded.sample_rate == pytest.approx(20.0)

    def test_csv_is_deterministic(self):
        """Test that the CSV text depends only on the trajectory."""
        traj = constant_wrench(F_z=1.5)

        assert trajectory_to_csv(traj) == trajectory_to_csv(traj)
        assert trajectory_to_csv(traj).splitlines()[0] == HEADER.strip()

    def test_torque_file(self, tmp_path):
        """Test writing and reading a single-joint torque file."""
        values = np.array([0.0, 0.1, -0.2, 0.3])
        traj = JointTorqueTrajectory(50.0, "MCP-X", 1, values)

        path = save_torque_trajectory(traj, tmp_path / "torque.csv")
        loaded = load_torque_trajectory(path, joint="MCP-X", finger_index=1)

        np.testing.assert_array_equal(loaded.values, values)
        assert loaded.sample_rate == pytest.approx(50.0)


@pytest.mark.unit
class TestTaskSuite:
    """Test task suite loading."""

    def test_shipped_suite(self):
        """Test the shipped thirty-task suite."""
        tasks = load_task_suite()

        assert len(tasks) == 30
        assert len({t.name for t in tasks}) == 30
        assert all(synthetic.is_synthetic(t.trajectory_path) for t in tasks)

    def test_shipped_grasp_choices(self):
        """Test handle size, grasp and palm of every shipped task."""
        tasks = load_task_suite()

        rows = [(t.name, t.size_label, t.grasp_name, t.palm) for t in tasks]
        assert rows == EVERYDAY_TASKS

    @pytest.mark.parametrize(
        "name, size, grasp",
        [
            ("use hammer to hammer in nail", "large", "L-Pinch"),
            ("fasten screw with screwdriver", "medium", "M-Pinch"),
            ("brush teeth", "medium", "M-Pinch"),
        ],
    )
    def test_single_shipped_task(self, name, size, grasp):
        """Test picking a shipped task by name."""
        task = load_task(DEFAULT_TASK_SUITE, name)

        assert (task.size_label, task.grasp_name, task.palm) == (size, grasp, True)

    def test_relative_paths_resolved(self, write_suite, tmp_path):
        """Test that file paths are resolved against the suite directory."""
        path = write_suite({"trajectory": "data/wrench.csv"})

        task = load_task_suite(path)[0]

        assert task.trajectory_path == str(tmp_path.resolve() / "data" / "wrench.csv")

    def test_unknown_grasp(self, write_suite):
        """Test that unknown grasp names are rejected."""
        with pytest.raises(ConfigError):
            load_task_suite(write_suite({"grasp": "Power"}))

    def test_unknown_key(self, write_suite):
        """Test that misspelled keys are rejected."""
        with pytest.raises(ConfigError):
            load_task_suite(write_suite({"frcition": 0.5}))

    def test_duplicate_names(self, write_suite):
        """Test that task names must be unique."""
        with pytest.raises(ConfigError):
            load_task_suite(write_suite({"name": "Same"}, {"name": "Same"}))

    def test_empty_file(self, write_file):
        """Test that an empty suite file yields no tasks."""
        assert load_task_suite(write_file("suite.json", "")) == []

    def test_invalid_json(self, write_file):
        """Test that a syntax error is a ConfigError."""
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_task_suite(write_file("suite.json", "{"))

    def test_load_task_by_name(self, write_suite):
        """Test picking one task from a suite."""
        path = write_suite(
            {"name": "First"}, {"name": "Second", "handle_size": "large"}
        )

        task = load_task(path, "Second")

        assert task.radius == 0.022

    def test_load_task_requires_name_for_suites(self, write_suite):
        """Test that an ambiguous suite needs a task name."""
        path = write_suite({"name": "First"}, {"name": "Second"})

        with pytest.raises(ConfigError) as exc_info:
            load_task(path)

        assert exc_info.value.details["available"] == ["First", "Second"]

    def test_load_single_task_file(self, write_json, tmp_path):
        """Test a file holding one task object."""
        path = write_json(
            "task.json",
            {
                "name": "Solo",
                "handle_size": 0.012,
                "grasp": "Tripod3",
                "palm": False,
                "trajectory": "solo.csv",
            },
        )

        task = load_task(path)

        assert task.radius == 0.012
        assert task.trajectory_path == str(tmp_path.resolve() / "solo.csv")


@pytest.mark.unit
class TestGraspFromConfig:
    """Test instantiating library grasps for tasks."""

    def test_palm_contact_appended(self, grasp_library, write_suite):
        """Test that palm tasks get four contacts with the palm last."""
        task = load_task_suite(write_suite({"grasp": "M-Pinch", "palm": True}))[0]

        config = grasp_from_config(task, grasp_library)

        assert config.n_contacts == 4
        assert config.has_palm

    def test_without_palm(self, grasp_library, write_suite):
        """Test that the palm contact is dropped when unused."""
        task = load_task_suite(write_suite({"grasp": "M-Pinch", "palm": False}))[0]

        assert len(grasp_contacts(task, grasp_library)) == 3

    @pytest.mark.parametrize(
        "grasp", ["M-Pinch", "L-Pinch", "Tripod1", "Tripod2", "Tripod3"]
    )
    @pytest.mark.parametrize("size", ["small", "medium", "large"])
    def test_every_library_grasp_builds(self, grasp_library, write_suite, grasp, size):
        """Test every grasp on every handle size, palm included."""
        path = write_suite({"grasp": grasp, "handle_size": size, "palm": True})
        task = load_task_suite(path)[0]

        config = grasp_from_config(task, grasp_library)

        assert config.name == grasp

    def test_overlapping_contacts_rejected(self, grasp_library, write_suite):
        """Test that contacts squeezed onto a tiny handle overlap."""
        task = load_task_suite(write_suite({"handle_size": 0.001}))[0]

        with pytest.raises(ConfigError, match="overlap"):
            grasp_from_config(task, grasp_library)


@pytest.mark.unit
class TestSynthetic:
    """Test synthetic trajectory references."""

    def test_parse_reference(self):
        """Test reading kind and parameters."""
        spec = synthetic.parse_reference(
            "synthetic:noisy?scale=0.5&duration=1&rate=100&seed=4"
        )

        assert spec == synthetic.SyntheticSpec("noisy", 0.5, 1.0, 100.0, 4)
        assert spec.n_samples == 101

    def test_unknown_kind(self):
        """Test that unknown kinds raise ConfigError."""
        with pytest.raises(ConfigError):
            synthetic.parse_reference("synthetic:square")

    def test_unknown_parameter(self):
        """Test that unknown parameters raise ConfigError."""
        with pytest.raises(ConfigError):
            synthetic.parse_reference("synthetic:zero?amplitude=2")

    def test_noisy_is_seeded(self):
        """Test that equal seeds give equal trajectories."""
        first = synthetic.from_reference("synthetic:noisy?seed=3&duration=2")
        second = synthetic.from_reference("synthetic:noisy?seed=3&duration=2")

        np.testing.assert_array_equal(first.samples, second.samples)

    def test_ramp_ends_at_base(self):
        """Test that the ramp reaches the scaled base wrench."""
        traj = synthetic.from_reference("synthetic:ramp?scale=3")

        np.testing.assert_allclose(traj.samples[0], 0.0)
        np.testing.assert_allclose(traj.samples[-1], 3 * synthetic.BASE_WRENCH)

    def test_shipped_suite_is_valid_json(self):
        """Test that every shipped reference parses."""
        document = json.loads(DEFAULT_TASK_SUITE.read_text(encoding="utf-8"))

        for task in document["tasks"]:
            synthetic.parse_reference(task["trajectory"])
