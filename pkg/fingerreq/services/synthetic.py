"""Synthetic wrench trajectories.

Deterministic stand-ins for recorded tool-base wrenches, used by the
shipped task suite and the tests. A task can reference one with a URI of
the form::

    synthetic:<kind>?scale=1.0&duration=0.6&rate=50&seed=3

Kinds: zero, constant, ramp, sinusoid, noisy (constant plus sparse spikes).
"""

import math
from dataclasses import dataclass
from typing import Dict
from urllib.parse import parse_qsl, urlsplit

import numpy as np

from fingerreq.models.wrench import WrenchTrajectory
from fingerreq.utils.error_handlers import ConfigError

SCHEME = "synthetic"
KINDS = ("zero", "constant", "ramp", "sinusoid", "noisy")

# Fx, Fy, Fz (N), Tx, Ty, Tz (N·m) at scale 1
BASE_WRENCH = np.array([0.3, -0.2, 1.0, 0.004, -0.003, 0.006])
SINE_FREQUENCIES_HZ = np.array([0.7, 1.1, 1.3, 0.9, 1.7, 2.3])
SPIKE_PROBABILITY = 0.03
SPIKE_GAIN = 4.0


@dataclass(frozen=True)
class SyntheticSpec:
    kind: str
    scale: float = 1.0
    duration: float = 0.6
    rate: float = 50.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(
                f"Unknown synthetic trajectory kind '{self.kind}'",
                details={"available": list(KINDS)},
            )
        if not (self.duration > 0 and self.rate > 0 and math.isfinite(self.scale)):
            raise ConfigError("Synthetic duration and rate must be positive")

    @property
    def n_samples(self) -> int:
        return max(2, int(round(self.duration * self.rate)) + 1)


def is_synthetic(reference: str) -> bool:
    return reference.startswith(f"{SCHEME}:")


def parse_reference(reference: str) -> SyntheticSpec:
    """Parse a ``synthetic:`` URI into a SyntheticSpec."""
    parts = urlsplit(reference)
    if parts.scheme != SCHEME:
        raise ConfigError(f"Not a synthetic trajectory reference: {reference}")
    params: Dict[str, str] = dict(parse_qsl(parts.query))
    unknown = set(params) - {"scale", "duration", "rate", "seed"}
    if unknown:
        raise ConfigError(
            f"Unknown synthetic parameters: {', '.join(sorted(unknown))}",
            details={"reference": reference},
        )
    try:
        return SyntheticSpec(
            kind=parts.path,
            scale=float(params.get("scale", 1.0)),
            duration=float(params.get("duration", 0.6)),
            rate=float(params.get("rate", 50.0)),
            seed=int(params.get("seed", 0)),
        )
    except ValueError as e:
        raise ConfigError(f"Invalid synthetic parameters in {reference}: {e}") from e


def generate(spec: SyntheticSpec) -> WrenchTrajectory:
    """Generate the wrench trajectory described by ``spec``."""
    n = spec.n_samples
    t = np.arange(n, dtype=float) / spec.rate
    base = BASE_WRENCH * spec.scale

    if spec.kind == "zero":
        samples = np.zeros((n, 6))
    elif spec.kind == "constant":
        samples = np.tile(base, (n, 1))
    elif spec.kind == "ramp":
        samples = np.outer(t / t[-1], base)
    elif spec.kind == "sinusoid":
        phase = 2.0 * math.pi * np.outer(t, SINE_FREQUENCIES_HZ)
        samples = base * (0.5 + 0.5 * np.sin(phase))
    else:
        rng = np.random.default_rng(spec.seed)
        samples = np.tile(base, (n, 1))
        spikes = rng.random(n) < SPIKE_PROBABILITY
        signs = rng.choice([-1.0, 1.0], size=(n, 6))
        samples[spikes] += SPIKE_GAIN * base * signs[spikes]

    return WrenchTrajectory(spec.rate, samples)


def from_reference(reference: str) -> WrenchTrajectory:
    return generate(parse_reference(reference))
