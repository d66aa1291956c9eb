"""Tool-base wrench recordings and task descriptions."""

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from fingerreq.models.grasp import HANDLE_RADII
from fingerreq.utils.error_handlers import ConfigError, DomainError

GRASP_NAMES = ("M-Pinch", "L-Pinch", "Tripod1", "Tripod2", "Tripod3")
WRENCH_COLUMNS = ("Fx", "Fy", "Fz", "Tx", "Ty", "Tz")
MAX_FRICTION = 2.5
UNIFORM_TOL = 1e-9


@dataclass(frozen=True)
class Wrench:
    """Six-axis force (N) / torque (N·m) sample."""

    F_x: float = 0.0
    F_y: float = 0.0
    F_z: float = 0.0
    T_x: float = 0.0
    T_y: float = 0.0
    T_z: float = 0.0

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in self.as_tuple()):
            raise DomainError("Wrench components must be finite")

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.F_x, self.F_y, self.F_z, self.T_x, self.T_y, self.T_z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "Wrench":
        return cls(*(float(v) for v in values))

    def scaled(self, factor: float) -> "Wrench":
        return Wrench.from_array(self.as_array() * factor)


@dataclass(frozen=True, eq=False)
class WrenchTrajectory:
    """Uniformly sampled wrench recording.

    ``samples`` is an (n, 6) array in the column order Fx, Fy, Fz, Tx, Ty, Tz.
    """

    sample_rate: float
    samples: np.ndarray
    start_time: float = 0.0

    def __post_init__(self) -> None:
        data = np.asarray(self.samples, dtype=float)
        if data.ndim != 2 or data.shape[1] != 6:
            raise DomainError("Wrench samples must be an (n, 6) array")
        if data.shape[0] < 2:
            raise DomainError("A wrench trajectory needs at least 2 samples")
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise DomainError("Sample rate must be positive")
        if not np.all(np.isfinite(data)):
            raise DomainError("Wrench samples must be finite")
        object.__setattr__(self, "samples", data)

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    def __getitem__(self, index: int) -> Wrench:
        return Wrench.from_array(self.samples[index])

    @property
    def dt(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return self.start_time + np.arange(len(self)) * self.dt

    @property
    def duration(self) -> float:
        return (len(self) - 1) * self.dt

    def scaled(self, factor: float) -> "WrenchTrajectory":
        return WrenchTrajectory(
            self.sample_rate, self.samples * factor, self.start_time
        )


@dataclass(frozen=True)
class TaskConfig:
    """One recorded task and the grasp used for it.

    ``handle_size`` is either one of small/medium/large or an explicit
    radius in meters; ``radius`` resolves it.
    """

    name: str
    handle_size: Union[str, float]
    grasp_name: str
    palm: bool
    trajectory_path: str
    friction_mu: float = 0.6
    posture: Optional[Tuple[float, float, float]] = None
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.grasp_name not in GRASP_NAMES:
            raise ConfigError(
                f"Unknown grasp '{self.grasp_name}' in task '{self.name}'",
                details={"available": list(GRASP_NAMES)},
            )
        if not (0.0 < self.friction_mu <= MAX_FRICTION):
            raise ConfigError(
                f"Friction coefficient for '{self.name}' "
                f"must lie in (0, {MAX_FRICTION}]"
            )
        if isinstance(self.handle_size, str):
            if self.handle_size.lower() not in HANDLE_RADII:
                raise ConfigError(f"Unknown handle size '{self.handle_size}'")
        elif not self.handle_size > 0:
            raise ConfigError("Explicit handle radius must be positive")

    @property
    def radius(self) -> float:
        if isinstance(self.handle_size, str):
            return HANDLE_RADII[self.handle_size.lower()]
        return float(self.handle_size)

    @property
    def size_label(self) -> str:
        if isinstance(self.handle_size, str):
            return self.handle_size.lower()
        for label, radius in HANDLE_RADII.items():
            if abs(radius - float(self.handle_size)) < 1e-12:
                return label
        return f"{float(self.handle_size):g}"
