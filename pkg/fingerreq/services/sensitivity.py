"""Sensitivity Studies.

How much do the peak joint torques of a task move when the assumed grasp
changes? Two studies are provided:

- touch-point perturbation: every nominal contact is moved uniformly within
  a disc on the handle surface and the handle radius is changed by
  +/- ``radius_delta``; perturbed grasps with overlapping contacts are
  resampled
- friction perturbation: the task is re-solved for each friction
  coefficient and compared against a baseline coefficient

Both report the mean and standard deviation of |Δ peak torque| pooled over
the three joint types.
"""

import math
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence

import numpy as np

from fingerreq.models.finger import JOINT_NAMES
from fingerreq.models.grasp import ContactPoint, GraspLibrary
from fingerreq.models.options import SolverOptions
from fingerreq.models.torque import TorqueRequirements
from fingerreq.models.wrench import TaskConfig, WrenchTrajectory
from fingerreq.services.grasp_optimizer import solve_trajectory
from fingerreq.services.wrench_io import (
    grasp_contacts,
    grasp_from_config,
    load_trajectory,
)
from fingerreq.utils import derive_seed, make_rng
from fingerreq.utils.error_handlers import ConfigError, DomainError, InfeasibleError
from fingerreq.utils.logging_config import (
    PerformanceLogger,
    get_logger,
    log_diagnostic_event,
)

logger = get_logger(__name__)

BASELINE_FRICTION = 0.6
MAX_RESAMPLES = 100


@dataclass(frozen=True, eq=False)
class SensitivityResult:
    """|Δ peak torque| statistics (N·m).

    ``deltas`` has one row per completed trial and one column per joint
    (MCP-Z, MCP-X, PIP).
    """

    mean: float
    std: float
    deltas: np.ndarray
    trials: int
    resamples: int = 0
    skipped: int = 0

    def as_dict(self) -> dict:
        return {
            "mean_Nm": self.mean,
            "std_Nm": self.std,
            "trials": self.trials,
            "resamples": self.resamples,
            "skipped": self.skipped,
        }


def _peaks(requirements: TorqueRequirements) -> np.ndarray:
    return np.array([requirements.peaks[name] for name in JOINT_NAMES])


def _statistics(
    rows: List[np.ndarray], trials: int, resamples: int = 0, skipped: int = 0
) -> SensitivityResult:
    deltas = np.array(rows, dtype=float).reshape(-1, len(JOINT_NAMES))
    if deltas.size == 0:
        return SensitivityResult(0.0, 0.0, deltas, trials, resamples, skipped)
    mean, std = float(np.mean(deltas)), float(np.std(deltas))
    return SensitivityResult(mean, std, deltas, trials, resamples, skipped)


def perturb_contacts(
    contacts: Sequence[ContactPoint],
    radius: float,
    pos_radius: float,
    radius_delta: float,
    rng: np.random.Generator,
):
    """Draw one perturbed grasp.

    Each contact moves by a point drawn uniformly from a disc of radius
    ``pos_radius`` on the unrolled surface of the perturbed handle.

    Returns:
        (contacts, handle radius)
    """
    sign = 1.0 if rng.random() < 0.5 else -1.0
    new_radius = radius + sign * radius_delta
    moved = []
    for contact in contacts:
        distance = pos_radius * math.sqrt(rng.random())
        angle = 2.0 * math.pi * rng.random()
        dz = distance * math.cos(angle)
        arc = distance * math.sin(angle)
        d_theta = arc / new_radius if new_radius > 0 else 0.0
        moved.append(
            replace(
                contact,
                nominal_z=contact.nominal_z + dz,
                nominal_theta=contact.nominal_theta + d_theta,
            )
        )
    return moved, new_radius


def sensitivity_touchpoints(
    task: TaskConfig,
    library: GraspLibrary,
    options: Optional[SolverOptions] = None,
    trials: int = 10,
    pos_radius: float = 0.005,
    radius_delta: float = 0.005,
    seed: int = 0,
    trajectory: Optional[WrenchTrajectory] = None,
    max_resamples: int = MAX_RESAMPLES,
) -> SensitivityResult:
    """Peak-torque change under random touch-point and radius perturbations.

    Args:
        task: Task to perturb
        library: Grasp library
        options: Solver options
        trials: Number of perturbed grasps
        pos_radius: Contact displacement radius (m)
        radius_delta: Handle radius change (m), applied with a random sign
        seed: Seed; trial k draws from a seed derived from (seed, k)
        trajectory: Wrench trajectory (loaded from the task when omitted)
        max_resamples: Redraws allowed per trial before the trial is skipped

    Returns:
        SensitivityResult

    Raises:
        DomainError: If ``trials`` < 1 or a radius is negative
    """
    if trials < 1:
        raise DomainError("At least one sensitivity trial is required")
    if pos_radius < 0 or radius_delta < 0:
        raise DomainError("Perturbation radii must be non-negative")

    traj = trajectory
    if traj is None:
        traj = load_trajectory(task.trajectory_path)
    nominal_contacts = grasp_contacts(task, library)
    nominal_grasp = grasp_from_config(task, library)
    nominal = _peaks(solve_trajectory(traj, nominal_grasp, options, task.name))

    rows: List[np.ndarray] = []
    resamples = skipped = 0
    with PerformanceLogger(f"sensitivity_touchpoints[{task.name}]", logger):
        for trial in range(trials):
            rng = make_rng(derive_seed(seed, trial))
            grasp = None
            for attempt in range(max_resamples + 1):
                contacts, radius = perturb_contacts(
                    nominal_contacts, task.radius, pos_radius, radius_delta, rng
                )
                try:
                    grasp = grasp_from_config(
                        task, library, contacts=contacts, radius=radius
                    )
                    break
                except (ConfigError, DomainError, InfeasibleError) as e:
                    resamples += 1
                    logger.debug(
                        f"Trial {trial} attempt {attempt} rejected: {e.message}"
                    )
            if grasp is None:
                skipped += 1
                log_diagnostic_event(
                    "sensitivity_trial_skipped",
                    f"No valid perturbed grasp for '{task.name}' "
                    f"after {max_resamples} resamples",
                    {"trial": trial},
                )
                continue
            peaks = _peaks(solve_trajectory(traj, grasp, options, task.name))
            rows.append(np.abs(peaks - nominal))

    result = _statistics(rows, trials, resamples, skipped)
    logger.info(
        f"Touch-point sensitivity for '{task.name}': "
        f"{result.mean:.4f} ± {result.std:.4f} N·m",
        extra={"context": result.as_dict()},
    )
    return result


def sensitivity_friction(
    task: TaskConfig,
    library: GraspLibrary,
    mu_values: Sequence[float] = (0.5, 0.7),
    options: Optional[SolverOptions] = None,
    baseline_mu: float = BASELINE_FRICTION,
    trajectory: Optional[WrenchTrajectory] = None,
) -> SensitivityResult:
    """Peak-torque change when the friction coefficient differs from the baseline.

    Args:
        task: Task to re-solve
        library: Grasp library
        mu_values: Friction coefficients to compare
        options: Solver options
        baseline_mu: Reference coefficient
        trajectory: Wrench trajectory (loaded from the task when omitted)

    Returns:
        SensitivityResult with one row per coefficient
    """
    if not mu_values:
        raise DomainError("At least one friction coefficient is required")
    if any(not mu > 0 for mu in (*mu_values, baseline_mu)):
        raise DomainError("Friction coefficients must be positive")

    traj = trajectory
    if traj is None:
        traj = load_trajectory(task.trajectory_path)

    def peaks_for(mu: float) -> np.ndarray:
        grasp = grasp_from_config(replace(task, friction_mu=mu), library)
        return _peaks(solve_trajectory(traj, grasp, options, task.name))

    nominal = peaks_for(baseline_mu)
    rows = [np.abs(peaks_for(mu) - nominal) for mu in mu_values]
    result = _statistics(rows, len(rows))
    logger.info(
        f"Friction sensitivity for '{task.name}': "
        f"{result.mean:.4f} ± {result.std:.4f} N·m",
        extra={"context": {**result.as_dict(), "mu_values": list(mu_values)}},
    )
    return result
