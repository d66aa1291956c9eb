"""Run options: solver, bandwidth sweep and run manifest."""

import math
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Optional

import numpy as np

from fingerreq.utils.error_handlers import ConfigError


@dataclass(frozen=True)
class SolverOptions:
    """Grasp optimizer settings.

    ``restarts`` counts every start except an explicit warm start: the
    nominal start plus ``restarts - 1`` seeded perturbations.
    """

    restarts: int = 5
    max_iter: int = 500
    ftol: float = 1e-12
    seed: int = 0
    equilibrium_tol: float = 1e-6
    cone_tol: float = 1e-8
    pressure_tol: float = 1e-12
    cone_margin: float = 1e-7
    freeze_positions: bool = False
    warm_start: bool = True
    infeasible_threshold: float = 0.10

    def __post_init__(self) -> None:
        if self.restarts < 1 or self.max_iter < 1:
            raise ConfigError("Solver restarts and max_iter must be at least 1")
        if not (self.ftol > 0 and self.equilibrium_tol > 0):
            raise ConfigError("Solver tolerances must be positive")
        if not 0.0 <= self.cone_margin < 0.1:
            raise ConfigError("cone_margin must lie in [0, 0.1)")

    @classmethod
    def from_config(
        cls, config: Mapping[str, Any], **overrides: Any
    ) -> "SolverOptions":
        base = cls(
            restarts=int(config.get("SOLVER_RESTARTS", cls.restarts)),
            max_iter=int(config.get("SOLVER_MAX_ITER", cls.max_iter)),
            ftol=float(config.get("SOLVER_FTOL", cls.ftol)),
            seed=int(config.get("SEED", cls.seed)),
            equilibrium_tol=float(config.get("EQUILIBRIUM_TOL", cls.equilibrium_tol)),
            cone_margin=float(config.get("CONE_MARGIN", cls.cone_margin)),
            infeasible_threshold=float(
                config.get("INFEASIBLE_THRESHOLD", cls.infeasible_threshold)
            ),
        )
        return replace(base, **overrides) if overrides else base


@dataclass(frozen=True)
class SweepOptions:
    """Bandwidth sweep grid (Hz) and tracking criterion."""

    start_hz: float = 0.2
    stop_hz: float = 100.0
    step_hz: float = 0.2
    pass_fraction: float = 0.98
    band_fraction: float = 0.05

    def __post_init__(self) -> None:
        if not (self.step_hz > 0 and self.start_hz > 0):
            raise ConfigError("Sweep start and step must be positive")
        if self.stop_hz < self.start_hz:
            raise ConfigError("Sweep stop must not be below its start")
        if not 0.0 < self.pass_fraction <= 1.0:
            raise ConfigError("pass_fraction must lie in (0, 1]")
        if not self.band_fraction >= 0.0:
            raise ConfigError("band_fraction must be non-negative")

    def grid(self) -> np.ndarray:
        """start, start + step, ... up to stop (inclusive within rounding)."""
        span = (self.stop_hz - self.start_hz) / self.step_hz
        count = int(math.floor(span + 1e-9)) + 1
        return self.start_hz + self.step_hz * np.arange(count, dtype=float)

    @classmethod
    def from_config(cls, config: Mapping[str, Any], **overrides: Any) -> "SweepOptions":
        base = cls(
            start_hz=float(config.get("SWEEP_START_HZ", cls.start_hz)),
            stop_hz=float(config.get("SWEEP_STOP_HZ", cls.stop_hz)),
            step_hz=float(config.get("SWEEP_STEP_HZ", cls.step_hz)),
            pass_fraction=float(config.get("PASS_FRACTION", cls.pass_fraction)),
            band_fraction=float(config.get("BAND_FRACTION", cls.band_fraction)),
        )
        return replace(base, **overrides) if overrides else base


@dataclass(frozen=True)
class RunManifest:
    """Everything that determines the outputs of a suite run."""

    suite_path: str
    grasp_library_path: str
    output_dir: str
    seed: int = 0
    solver: SolverOptions = field(default_factory=SolverOptions)
    sweep: SweepOptions = field(default_factory=SweepOptions)
    profile_path: Optional[str] = None
    jobs: int = 1
    name: str = "run"
