"""Requirement profiles, task summaries and design reports."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from fingerreq.utils.error_handlers import ConfigError

DIRECTIONS = (">=", "<=")


@dataclass(frozen=True)
class Metric:
    """One requirement row (desired value and comparison direction)."""

    name: str
    desired: float
    unit: str
    direction: str = ">="
    note: str = ""

    def __post_init__(self) -> None:
        if self.direction not in DIRECTIONS:
            raise ConfigError(
                f"Metric '{self.name}' has invalid direction '{self.direction}'",
                details={"allowed": list(DIRECTIONS)},
            )

    def passes(self, achieved: float) -> bool:
        if self.direction == ">=":
            return achieved >= self.desired
        return achieved <= self.desired


@dataclass(frozen=True)
class RequirementsProfile:
    """Named, ordered list of metrics with unique names."""

    name: str
    metrics: Tuple[Metric, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "metrics", tuple(self.metrics))
        seen = set()
        for metric in self.metrics:
            if metric.name in seen:
                raise ConfigError(
                    f"Duplicate metric '{metric.name}' in profile '{self.name}'"
                )
            seen.add(metric.name)

    def get(self, name: str) -> Metric:
        for metric in self.metrics:
            if metric.name == name:
                return metric
        raise KeyError(name)

    def with_desired(self, overrides: Dict[str, float]) -> "RequirementsProfile":
        """Copy of the profile with some desired values replaced."""
        metrics = tuple(
            Metric(
                m.name, overrides.get(m.name, m.desired), m.unit, m.direction, m.note
            )
            for m in self.metrics
        )
        return RequirementsProfile(self.name, metrics)


@dataclass(frozen=True)
class Measurement:
    """Achieved value with an optional display-only uncertainty."""

    value: float
    uncertainty: Optional[float] = None

    def display(self) -> str:
        if self.uncertainty is None:
            return f"{self.value:g}"
        return f"{self.value:g}±{self.uncertainty:g}"


@dataclass(frozen=True)
class MetricResult:
    metric: Metric
    achieved: Measurement
    passed: bool


@dataclass(frozen=True)
class TaskSummary:
    """Per-task peaks (N·m) and bandwidths (Hz, None when no grid point passed)."""

    name: str
    handle_size: str
    palm: bool
    peak_torque: Dict[str, float]
    bandwidth: Dict[str, Optional[float]]
    infeasible_steps: int = 0


@dataclass(frozen=True)
class GroupSummary:
    handle_size: str
    palm: bool
    peak_torque: Dict[str, float]
    bandwidth: Dict[str, float]
    tasks: Tuple[str, ...]


@dataclass(frozen=True)
class SuiteSummary:
    """Suite-wide maxima per joint plus handle-size / palm groups."""

    peak_torque: Dict[str, float]
    bandwidth: Dict[str, float]
    groups: Tuple[GroupSummary, ...]
    tasks: Tuple[TaskSummary, ...]


@dataclass(frozen=True)
class DesignReport:
    profile_name: str
    rows: Tuple[MetricResult, ...]
    tasks: Tuple[TaskSummary, ...] = field(default_factory=tuple)

    @property
    def n_passed(self) -> int:
        return sum(1 for row in self.rows if row.passed)

    @property
    def n_failed(self) -> int:
        return len(self.rows) - self.n_passed

    def failures(self) -> List[str]:
        return [row.metric.name for row in self.rows if not row.passed]
