"""Wrench and Task Input/Output Service.

Reads and writes force/torque trajectory CSV files, loads task suites and
the grasp library, and instantiates grasps on a task's handle.

Features:
- Trajectory CSV parsing with row/column diagnostics
- Lossless trajectory writing (floats written with repr)
- Task suite and grasp library loading through marshmallow schemas
- Grasp instantiation with finger placement and inverse kinematics

Usage:
    from fingerreq.services.wrench_io import load_task_suite, grasp_from_config

    tasks = load_task_suite("fingerreq/data/task_suite.json")
    grasp = grasp_from_config(tasks[0], load_grasp_library())
"""

import csv
import io
import math
from dataclasses import replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from fingerreq.config import DATA_DIR
from fingerreq.models.finger import (
    FingerGeometry,
    JointAngles,
    forward_kinematics,
    inverse_kinematics,
    place_finger_base,
)
from fingerreq.models.grasp import (
    DEFAULT_POSTURE,
    ContactPoint,
    CylinderFrame,
    FingerPlacement,
    GraspConfig,
    GraspLibrary,
    overlapping_pairs,
)
from fingerreq.models.torque import JointTorqueTrajectory
from fingerreq.models.wrench import (
    UNIFORM_TOL,
    WRENCH_COLUMNS,
    TaskConfig,
    WrenchTrajectory,
)
from fingerreq.schemas.base import load_json_document, read_json
from fingerreq.schemas.task import GraspLibrarySchema, TaskSchema, TaskSuiteSchema
from fingerreq.services import synthetic
from fingerreq.utils.error_handlers import ConfigError, InfeasibleError, ParseError
from fingerreq.utils.logging_config import get_logger
from fingerreq.utils.service_helpers import atomic_write

logger = get_logger(__name__)

PathLike = Union[str, Path]

DEFAULT_GRASP_LIBRARY = DATA_DIR / "grasp_library.json"
DEFAULT_TASK_SUITE = DATA_DIR / "task_suite.json"
PLACEMENT_TOL = 1e-9


def _data_lines(handle: Iterable[str]) -> Iterable[Tuple[int, str]]:
    for number, line in enumerate(handle, start=1):
        if line.lstrip().startswith("#") or not line.strip():
            continue
        yield number, line


def _read_columns(
    path: PathLike, required: Sequence[str]
) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
    """Parse a CSV file into a time vector and named float columns."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise ParseError(
            f"Trajectory file not found: {file_path}", path=str(file_path)
        ) from e

    numbered = list(_data_lines(io.StringIO(text)))
    if not numbered:
        raise ParseError(f"{file_path}: no header line", row=1, path=str(file_path))

    reader = csv.DictReader(line for _, line in numbered)
    header = [name.strip() for name in (reader.fieldnames or [])]
    reader.fieldnames = header
    for column in ("t", *required):
        if column not in header:
            raise ParseError(
                f"{file_path}: missing column '{column}'",
                row=numbered[0][0],
                column=column,
                path=str(file_path),
            )

    columns: Dict[str, List[float]] = {name: [] for name in ("t", *required)}
    for (line_number, _), record in zip(numbered[1:], reader):
        for name in columns:
            cell = record.get(name)
            try:
                value = float(cell.strip()) if cell is not None else math.nan
            except ValueError:
                value = math.nan
            if not math.isfinite(value):
                raise ParseError(
                    f"{file_path}: row {line_number} column '{name}' "
                    f"is not a finite number: {cell!r}",
                    row=line_number,
                    column=name,
                    path=str(file_path),
                )
            columns[name].append(value)

    times = np.asarray(columns.pop("t"), dtype=float)
    if times.size < 2:
        raise ParseError(
            f"{file_path}: at least 2 samples are required", path=str(file_path)
        )

    steps = np.diff(times)
    bad = np.flatnonzero(steps <= 0.0)
    if bad.size:
        row = numbered[int(bad[0]) + 2][0]
        raise ParseError(
            f"{file_path}: time is not strictly increasing at row {row}",
            row=row,
            column="t",
            path=str(file_path),
        )
    dt = (times[-1] - times[0]) / (times.size - 1)
    drift = np.abs(times - (times[0] + dt * np.arange(times.size)))
    if np.max(drift) > UNIFORM_TOL:
        index = int(np.argmax(drift))
        row = numbered[index + 1][0]
        raise ParseError(
            f"{file_path}: sampling is not uniform at row {row}",
            row=row,
            column="t",
            path=str(file_path),
        )
    return times, {
        name: np.asarray(values, dtype=float) for name, values in columns.items()
    }


def load_trajectory(path: PathLike) -> WrenchTrajectory:
    """Load a wrench trajectory CSV (``t,Fx,Fy,Fz,Tx,Ty,Tz``).

    Args:
        path: CSV file or ``synthetic:`` reference

    Returns:
        WrenchTrajectory

    Raises:
        ParseError: Missing columns, non-numeric cells or bad time column
    """
    if isinstance(path, str) and synthetic.is_synthetic(path):
        return synthetic.from_reference(path)
    times, columns = _read_columns(path, WRENCH_COLUMNS)
    samples = np.column_stack([columns[name] for name in WRENCH_COLUMNS])
    rate = (times.size - 1) / (times[-1] - times[0])
    logger.debug(f"Loaded {times.size} wrench samples from {path} at {rate:g} Hz")
    return WrenchTrajectory(rate, samples, float(times[0]))


def load_torque_trajectory(
    path: PathLike, joint: str = "PIP", finger_index: int = 0
) -> JointTorqueTrajectory:
    """Load a single-joint torque CSV (``t,torque``)."""
    times, columns = _read_columns(path, ("torque",))
    rate = (times.size - 1) / (times[-1] - times[0])
    return JointTorqueTrajectory(rate, joint, finger_index, columns["torque"])


def _seed_comment(seed: Optional[int]) -> str:
    return f"# seed={seed}\n" if seed is not None else ""


def trajectory_to_csv(traj: WrenchTrajectory, seed: Optional[int] = None) -> str:
    lines = [_seed_comment(seed) + "t," + ",".join(WRENCH_COLUMNS)]
    for t, row in zip(traj.times, traj.samples):
        lines.append(",".join(repr(float(v)) for v in (t, *row)))
    return "\n".join(lines) + "\n"


def save_trajectory(
    traj: WrenchTrajectory, path: PathLike, seed: Optional[int] = None
) -> Path:
    """Write a wrench trajectory CSV atomically."""
    return atomic_write(path, trajectory_to_csv(traj, seed))


def save_torque_trajectory(
    traj: JointTorqueTrajectory, path: PathLike, seed: Optional[int] = None
) -> Path:
    """Write a single-joint torque CSV (``t,torque``) atomically."""
    lines = [_seed_comment(seed) + "t,torque"]
    for k, value in enumerate(traj.values):
        lines.append(f"{repr(k * traj.dt)},{repr(float(value))}")
    return atomic_write(path, "\n".join(lines) + "\n")


def load_task_suite(path: PathLike = DEFAULT_TASK_SUITE) -> List[TaskConfig]:
    """Load a task suite file.

    Relative trajectory paths are resolved against the suite's directory;
    ``synthetic:`` references are kept as they are.

    Args:
        path: Suite JSON file

    Returns:
        List of TaskConfig in file order (empty for an empty file)

    Raises:
        ConfigError: Unknown grasp names or other schema violations
    """
    if read_json(path) is None:
        logger.warning(f"Task suite {path} is empty")
        return []
    suite = load_json_document(path, TaskSuiteSchema())
    base = Path(path).resolve().parent
    tasks = []
    for task in suite["tasks"]:
        reference = task.trajectory_path
        if not synthetic.is_synthetic(reference) and not Path(reference).is_absolute():
            task = replace(task, trajectory_path=str(base / reference))
        tasks.append(task)
    if not tasks:
        logger.warning(f"Task suite {path} contains no tasks")
    logger.info(f"Loaded {len(tasks)} tasks from {path}")
    return tasks


def load_grasp_library(path: PathLike = DEFAULT_GRASP_LIBRARY) -> GraspLibrary:
    """Load the grasp library file."""
    return load_json_document(path, GraspLibrarySchema())


def build_grasp_config(
    cylinder: CylinderFrame,
    contacts: Sequence[ContactPoint],
    friction_mu: float,
    finger: Optional[FingerGeometry] = None,
    posture: JointAngles = DEFAULT_POSTURE,
    name: str = "",
) -> GraspConfig:
    """Mount three fingers on their nominal contacts.

    Each finger base is placed so that the finger touches its contact in
    ``posture``; the joint angles are then recovered by inverse kinematics
    and checked against forward kinematics.

    Args:
        cylinder: Handle
        contacts: Three finger contacts, optionally followed by a palm contact
        friction_mu: Friction coefficient
        finger: Finger geometry (default geometry if omitted)
        posture: Nominal posture used for the placement
        name: Grasp name for diagnostics

    Returns:
        GraspConfig

    Raises:
        InfeasibleError: If a placed finger does not reach its contact
    """
    geometry = finger or FingerGeometry()
    placements = []
    for contact in contacts:
        if contact.is_palm:
            continue
        point = cylinder.surface_point(contact.nominal_z, contact.nominal_theta)
        frame = cylinder.contact_frame(contact.nominal_theta)
        base_pose = place_finger_base(geometry, point, frame, posture)
        q = inverse_kinematics(geometry, point, base_pose)
        reached = forward_kinematics(geometry, q, base_pose).position
        error = float(np.linalg.norm(reached - point))
        if error > PLACEMENT_TOL:
            raise InfeasibleError(
                f"Finger for grasp '{name}' misses its contact by {error:.3g} m",
                distance=error,
            )
        placements.append(FingerPlacement(geometry, base_pose, q))
    return GraspConfig(cylinder, tuple(contacts), friction_mu, tuple(placements), name)


def grasp_contacts(task: TaskConfig, library: GraspLibrary) -> List[ContactPoint]:
    """Nominal contacts of the task's grasp, palm last when the task uses it."""
    template = library.get(task.grasp_name)
    contacts = list(template.finger_contacts())
    if task.palm:
        palm = template.palm_contact()
        if palm is None:
            raise ConfigError(
                f"Task '{task.name}' uses a palm "
                f"but grasp '{template.name}' defines none"
            )
        contacts.append(palm)
    return contacts


def grasp_from_config(
    task: TaskConfig,
    library: GraspLibrary,
    contacts: Optional[Sequence[ContactPoint]] = None,
    radius: Optional[float] = None,
) -> GraspConfig:
    """Instantiate the task's grasp on a cylinder of the task's radius.

    Args:
        task: Task configuration
        library: Grasp library
        contacts: Replacement contacts (perturbation studies)
        radius: Replacement handle radius (m)

    Returns:
        GraspConfig with 3 finger contacts plus the palm when ``task.palm``

    Raises:
        ConfigError: Unknown grasp, missing palm contact or overlapping contacts
    """
    template = library.get(task.grasp_name)
    if contacts is None:
        contacts = grasp_contacts(task, library)

    cylinder = CylinderFrame(task.radius if radius is None else radius)
    overlaps = overlapping_pairs(cylinder.radius, contacts)
    if overlaps:
        raise ConfigError(
            f"Contacts of grasp '{template.name}' overlap "
            f"on a {cylinder.radius * 1000:g} mm handle",
            details={"pairs": overlaps, "task": task.name},
        )

    if task.posture is not None:
        posture = JointAngles.from_array(task.posture)
    else:
        posture = template.posture or library.posture
    return build_grasp_config(
        cylinder, contacts, task.friction_mu, library.finger, posture, template.name
    )


def load_task(path: PathLike, name: Optional[str] = None) -> TaskConfig:
    """Load one task from a suite file or a single-task file.

    Args:
        path: Suite JSON (``{"tasks": [...]}``) or a single task object
        name: Task to pick from a suite; required when it has several tasks

    Raises:
        ConfigError: Unknown task name or ambiguous suite
    """
    document = read_json(path)
    if isinstance(document, dict) and "tasks" in document:
        tasks = load_task_suite(path)
        if name is None:
            if len(tasks) != 1:
                raise ConfigError(
                    f"{path} holds {len(tasks)} tasks; choose one with --task",
                    details={"available": [t.name for t in tasks]},
                )
            return tasks[0]
        for task in tasks:
            if task.name == name:
                return task
        raise ConfigError(
            f"Task '{name}' not found in {path}",
            details={"available": [t.name for t in tasks]},
        )

    task = load_json_document(path, TaskSchema())
    if name is not None and task.name != name:
        raise ConfigError(f"Task file {path} holds '{task.name}', not '{name}'")
    reference = task.trajectory_path
    if not synthetic.is_synthetic(reference) and not Path(reference).is_absolute():
        resolved = Path(path).resolve().parent / reference
        task = replace(task, trajectory_path=str(resolved))
    return task
