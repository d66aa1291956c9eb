"""Suite Pipeline.

Runs every task of a suite through force optimization and bandwidth
analysis and writes a reproducible output tree:

    <output_dir>/
        manifest.json                 resolved run settings
        suite.csv                     per task and joint: peak torque, bandwidth
        groups.csv                    handle-size / palm groups
        summary.json                  suite maxima
        desired.json                  profile with suite-derived desired values
        tasks/<NN>-<slug>/
            peaks.json
            bandwidth.csv
            torque_f<finger>_<joint>.csv

Tasks run in parallel with joblib; each task gets its own seed derived from
the run seed and the task index, and files are written by the parent
process in task order, so the tree does not depend on ``jobs``.
"""

import math
import re
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from joblib import Parallel, delayed

from fingerreq.models.finger import JOINT_NAMES
from fingerreq.models.grasp import GraspLibrary
from fingerreq.models.options import RunManifest, SolverOptions, SweepOptions
from fingerreq.models.report import SuiteSummary, TaskSummary
from fingerreq.models.torque import BandwidthResult, TorqueRequirements
from fingerreq.models.wrench import TaskConfig
from fingerreq.schemas.base import load_json_document
from fingerreq.schemas.report import ProfileSchema
from fingerreq.services.bandwidth import bandwidth_to_csv, min_bandwidth
from fingerreq.services.grasp_optimizer import GraspOptimizer
from fingerreq.services.report_service import (
    derive_desired,
    summarize_tasks,
    task_summary,
    write_groups_csv,
    write_suite_csv,
)
from fingerreq.services.wrench_io import (
    grasp_from_config,
    load_grasp_library,
    load_task_suite,
    load_trajectory,
    save_torque_trajectory,
)
from fingerreq.utils import canonical_json, derive_seed
from fingerreq.utils.error_handlers import ReportError
from fingerreq.utils.logging_config import PerformanceLogger, get_logger, run_context
from fingerreq.utils.service_helpers import atomic_write

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class TaskOutcome:
    """Optimized torques and per-finger bandwidths of one task."""

    task: TaskConfig
    requirements: TorqueRequirements
    bandwidths: Dict[str, Tuple[BandwidthResult, ...]]
    seed: int

    @property
    def summary(self) -> TaskSummary:
        return task_summary(self.task, self.requirements, self.bandwidths)

    @property
    def partial(self) -> bool:
        return self.requirements.warning is not None


@dataclass(frozen=True, eq=False)
class SuiteRun:
    summary: SuiteSummary
    outcomes: Tuple[TaskOutcome, ...]
    output_dir: Path

    @property
    def partial_tasks(self) -> List[str]:
        return [o.task.name for o in self.outcomes if o.partial]


def slugify(name: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")
    return slug or "task"


def optimize_task(
    task: TaskConfig,
    library: GraspLibrary,
    solver: Optional[SolverOptions] = None,
    sweep: Optional[SweepOptions] = None,
) -> TaskOutcome:
    """Optimize one task and find the bandwidth of every finger joint.

    Args:
        task: Task configuration
        library: Grasp library
        solver: Solver options (its seed is recorded in the outcome)
        sweep: Bandwidth sweep options

    Returns:
        TaskOutcome
    """
    solver = solver or SolverOptions()
    with run_context(task=task.name, seed=solver.seed):
        trajectory = load_trajectory(task.trajectory_path)
        grasp = grasp_from_config(task, library)
        optimizer = GraspOptimizer(grasp, solver)
        requirements = optimizer.solve_trajectory(trajectory, task.name)
        bandwidths = {
            joint: tuple(
                min_bandwidth(requirements.joint_trajectory(finger, joint), sweep)
                for finger in range(3)
            )
            for joint in JOINT_NAMES
        }
    return TaskOutcome(task, requirements, bandwidths, solver.seed)


def _bandwidth_csv(outcome: TaskOutcome) -> str:
    rows = (
        (finger, joint, result)
        for joint in JOINT_NAMES
        for finger, result in enumerate(outcome.bandwidths[joint])
    )
    return bandwidth_to_csv(rows, outcome.seed)


def _finite(values: Dict[str, Optional[float]]) -> Dict[str, Optional[float]]:
    return {k: None if v is None or math.isnan(v) else v for k, v in values.items()}


def _peaks_payload(outcome: TaskOutcome) -> dict:
    summary = outcome.summary
    return {
        "task": outcome.task.name,
        "seed": outcome.seed,
        "peak_torque_Nm": summary.peak_torque,
        "bandwidth_Hz": _finite(summary.bandwidth),
        "steps": outcome.requirements.n_steps,
        "infeasible_steps": outcome.requirements.infeasible_steps,
        "warning": outcome.requirements.warning,
    }


def write_task_outputs(outcome: TaskOutcome, directory: Path) -> Path:
    """Write torque trajectories, bandwidths and peaks of one task."""
    directory = Path(directory)
    for trajectory in outcome.requirements.trajectories():
        name = f"torque_f{trajectory.finger_index}_{trajectory.joint}.csv"
        save_torque_trajectory(trajectory, directory / name, outcome.seed)
    atomic_write(directory / "bandwidth.csv", _bandwidth_csv(outcome))
    atomic_write(directory / "peaks.json", canonical_json(_peaks_payload(outcome)))
    return directory


def _run_one(
    index: int,
    task: TaskConfig,
    library: GraspLibrary,
    solver: SolverOptions,
    sweep: SweepOptions,
    seed: int,
) -> TaskOutcome:
    options = replace(solver, seed=derive_seed(seed, index))
    return optimize_task(task, library, options, sweep)


class SuitePipeline:
    """Runs a manifest end to end."""

    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

    def _manifest_payload(self, n_tasks: int) -> dict:
        m = self.manifest
        return {
            "name": m.name,
            "seed": m.seed,
            "suite": Path(m.suite_path).name,
            "grasp_library": Path(m.grasp_library_path).name,
            "profile": Path(m.profile_path).name if m.profile_path else None,
            "tasks": n_tasks,
            "solver": asdict(m.solver),
            "sweep": asdict(m.sweep),
        }

    def run(self) -> SuiteRun:
        """Run every task and write the output tree.

        Returns:
            SuiteRun

        Raises:
            ReportError: If the suite has no tasks
        """
        m = self.manifest
        tasks = load_task_suite(m.suite_path)
        if not tasks:
            raise ReportError(f"Task suite {m.suite_path} has no tasks")
        library = load_grasp_library(m.grasp_library_path)
        output_dir = Path(m.output_dir)

        timer = PerformanceLogger(f"run_suite[{m.name}]", self.logger)
        with run_context(run=m.name, seed=m.seed), timer:
            self.logger.info(f"Running {len(tasks)} tasks with {m.jobs} job(s)")
            outcomes = Parallel(n_jobs=m.jobs)(
                delayed(_run_one)(index, task, library, m.solver, m.sweep, m.seed)
                for index, task in enumerate(tasks)
            )

        for index, outcome in enumerate(outcomes):
            slug = f"{index:02d}-{slugify(outcome.task.name)}"
            task_dir = output_dir / "tasks" / slug
            write_task_outputs(outcome, task_dir)

        summary = summarize_tasks([o.summary for o in outcomes])
        write_suite_csv(summary, output_dir / "suite.csv", m.seed)
        write_groups_csv(summary, output_dir / "groups.csv", m.seed)
        atomic_write(
            output_dir / "summary.json",
            canonical_json(
                {
                    "seed": m.seed,
                    "peak_torque_Nm": _finite(summary.peak_torque),
                    "bandwidth_Hz": _finite(summary.bandwidth),
                    "partial_tasks": [o.task.name for o in outcomes if o.partial],
                }
            ),
        )
        manifest_payload = self._manifest_payload(len(tasks))
        atomic_write(output_dir / "manifest.json", canonical_json(manifest_payload))

        if m.profile_path:
            base_profile = load_json_document(m.profile_path, ProfileSchema())
            profile = derive_desired(base_profile, summary)
            payload = {
                "profile": profile.name,
                "seed": m.seed,
                "desired": {metric.name: metric.desired for metric in profile.metrics},
            }
            atomic_write(output_dir / "desired.json", canonical_json(payload))

        return SuiteRun(summary, tuple(outcomes), output_dir)


def run_suite(manifest: RunManifest) -> SuiteRun:
    return SuitePipeline(manifest).run()
