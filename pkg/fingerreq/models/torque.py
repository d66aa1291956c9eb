"""Joint torque trajectories, per-task torque requirements and bandwidth results."""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from fingerreq.models.finger import JOINT_NAMES
from fingerreq.utils.error_handlers import DomainError

JOINT_INDEX = {name: i for i, name in enumerate(JOINT_NAMES)}


@dataclass(frozen=True, eq=False)
class JointTorqueTrajectory:
    """Torque samples (N·m) of one joint of one finger."""

    sample_rate: float
    joint: str
    finger_index: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.joint not in JOINT_INDEX:
            raise DomainError(f"Unknown joint '{self.joint}'")
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise DomainError("Sample rate must be positive")
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(values)):
            raise DomainError("Torque samples must be finite")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0


@dataclass(frozen=True, eq=False)
class TorqueRequirements:
    """Optimized joint torques of a task.

    Attributes:
        sample_rate: Rate of the source wrench trajectory (Hz)
        torques: (steps, 3 fingers, 3 joints) array; infeasible steps hold
            the last feasible value
        feasible: (steps,) mask of feasible timesteps
        objective: (steps,) objective values (nan where infeasible)
        warning: Set when more than the allowed share of steps is infeasible
    """

    sample_rate: float
    torques: np.ndarray
    feasible: np.ndarray
    objective: np.ndarray
    warning: Optional[str] = None
    peaks: Dict[str, float] = field(init=False)

    def __post_init__(self) -> None:
        torques = np.asarray(self.torques, dtype=float).reshape(-1, 3, 3)
        feasible = np.asarray(self.feasible, dtype=bool).reshape(-1)
        if feasible.size != torques.shape[0]:
            raise DomainError("Feasibility mask does not match the torque trajectory")
        object.__setattr__(self, "torques", torques)
        object.__setattr__(self, "feasible", feasible)
        objective = np.asarray(self.objective, dtype=float).reshape(-1)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "peaks", self._compute_peaks())

    def _compute_peaks(self) -> Dict[str, float]:
        usable = self.torques[self.feasible]
        if usable.size == 0:
            return {name: 0.0 for name in JOINT_NAMES}
        return {
            name: float(np.max(np.abs(usable[:, :, JOINT_INDEX[name]])))
            for name in JOINT_NAMES
        }

    @property
    def peak_mcp_z(self) -> float:
        return self.peaks["MCP-Z"]

    @property
    def peak_mcp_x(self) -> float:
        return self.peaks["MCP-X"]

    @property
    def peak_pip(self) -> float:
        return self.peaks["PIP"]

    @property
    def n_steps(self) -> int:
        return int(self.feasible.size)

    @property
    def infeasible_steps(self) -> int:
        return int(np.count_nonzero(~self.feasible))

    @property
    def infeasible_fraction(self) -> float:
        return self.infeasible_steps / self.n_steps if self.n_steps else 0.0

    def joint_trajectory(self, finger: int, joint: str) -> JointTorqueTrajectory:
        return JointTorqueTrajectory(
            self.sample_rate, joint, finger, self.torques[:, finger, JOINT_INDEX[joint]]
        )

    def trajectories(self) -> Iterator[JointTorqueTrajectory]:
        for finger in range(3):
            for joint in JOINT_NAMES:
                yield self.joint_trajectory(finger, joint)

    def concatenate(self, other: "TorqueRequirements") -> "TorqueRequirements":
        """Join two requirements recorded at the same rate."""
        if abs(self.sample_rate - other.sample_rate) > 1e-9:
            raise DomainError(
                "Cannot concatenate trajectories with different sample rates"
            )
        warnings = [w for w in (self.warning, other.warning) if w]
        return TorqueRequirements(
            self.sample_rate,
            np.concatenate([self.torques, other.torques]),
            np.concatenate([self.feasible, other.feasible]),
            np.concatenate([self.objective, other.objective]),
            "; ".join(warnings) or None,
        )


@dataclass(frozen=True)
class BandwidthResult:
    """Smallest first-order bandwidth tracking a torque trajectory.

    ``bandwidth`` is None when no grid point passes; ``pass_fraction`` is
    then the best fraction reached over the grid.
    """

    bandwidth: Optional[float]
    pass_fraction: float
    tolerance_band: float
    passed: bool = True

    @property
    def bandwidth_or_nan(self) -> float:
        return float("nan") if self.bandwidth is None else float(self.bandwidth)


@dataclass(frozen=True, eq=False)
class BandwidthSweep:
    """Pass fraction at every sweep grid point (Hz)."""

    grid: np.ndarray
    pass_fractions: np.ndarray
    tolerance_band: float

    def rows(self) -> List[Tuple[float, float]]:
        return [(float(b), float(p)) for b, p in zip(self.grid, self.pass_fractions)]
