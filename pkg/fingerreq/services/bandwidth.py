"""Bandwidth Service.

Finds the lowest first-order bandwidth able to follow a joint torque
trajectory. Each candidate bandwidth B is simulated as

    T(s) = sqrt(B**2 + 1) / (s + B)

driven by the reference under a zero-order hold, starting from rest. A
candidate passes when at least ``pass_fraction`` of the samples stay within
``band_fraction * max|r|`` of the reference.

Bandwidths are given in Hz at the interface and converted to rad/s for the
transfer function.

Usage:
    from fingerreq.services.bandwidth import min_bandwidth

    result = min_bandwidth(requirements.joint_trajectory(0, "PIP"))
"""

import math
from dataclasses import replace
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from scipy.signal import lfilter

from fingerreq.models.options import SweepOptions
from fingerreq.models.torque import (
    BandwidthResult,
    BandwidthSweep,
    JointTorqueTrajectory,
)
from fingerreq.utils.error_handlers import DomainError
from fingerreq.utils.logging_config import get_logger, log_performance

logger = get_logger(__name__)

RISE_TIME_CONSTANT = 0.35
ArrayLike = Union[JointTorqueTrajectory, np.ndarray]


def hz_to_rad(frequency_hz: float) -> float:
    return 2.0 * math.pi * frequency_hz


def rad_to_hz(frequency_rad: float) -> float:
    return frequency_rad / (2.0 * math.pi)


def simulate_first_order(
    reference: JointTorqueTrajectory, bandwidth_rad: float
) -> np.ndarray:
    """Response of T(s) = sqrt(B²+1)/(s+B) to the reference.

    The zero-order-hold discretization is exact:
    ``y[k+1] = a*y[k] + (1 - a)*G*u[k]`` with ``a = exp(-B*dt)`` and DC
    gain ``G = sqrt(B²+1)/B``.

    Args:
        reference: Torque trajectory (N·m)
        bandwidth_rad: B in rad/s

    Returns:
        Output samples aligned with the reference samples, y[0] = 0
    """
    if not (math.isfinite(bandwidth_rad) and bandwidth_rad > 0):
        raise DomainError(f"Bandwidth must be positive, got {bandwidth_rad!r}")
    a = math.exp(-bandwidth_rad * reference.dt)
    gain = math.sqrt(bandwidth_rad**2 + 1.0) / bandwidth_rad
    return lfilter([0.0, (1.0 - a) * gain], [1.0, -a], reference.values)


def pass_fraction(
    reference: JointTorqueTrajectory, bandwidth_rad: float, band: float
) -> float:
    """Share of samples whose tracking error is within ``band``."""
    response = simulate_first_order(reference, bandwidth_rad)
    inside = np.abs(response - reference.values) <= band
    return float(np.count_nonzero(inside)) / len(reference)


def tolerance_band(reference: JointTorqueTrajectory, band_fraction: float) -> float:
    return band_fraction * float(np.max(np.abs(reference.values)))


def _resolve(
    sweep: Optional[SweepOptions],
    pass_fraction_: Optional[float],
    band_fraction: Optional[float],
) -> SweepOptions:
    sweep = sweep or SweepOptions()
    overrides = {}
    if pass_fraction_ is not None:
        overrides["pass_fraction"] = pass_fraction_
    if band_fraction is not None:
        overrides["band_fraction"] = band_fraction
    return replace(sweep, **overrides) if overrides else sweep


def min_bandwidth(
    reference: JointTorqueTrajectory,
    sweep: Optional[SweepOptions] = None,
    pass_fraction: Optional[float] = None,
    band_fraction: Optional[float] = None,
) -> BandwidthResult:
    """Smallest grid bandwidth (Hz) that tracks the reference.

    Args:
        reference: Torque trajectory
        sweep: Grid and criterion (defaults: 0.2..100 Hz step 0.2, 98 %, 5 %)
        pass_fraction: Overrides ``sweep.pass_fraction``
        band_fraction: Overrides ``sweep.band_fraction``

    Returns:
        BandwidthResult; ``passed`` is False and ``bandwidth`` None when no
        grid point passes, with the best fraction reached
    """
    options = _resolve(sweep, pass_fraction, band_fraction)
    grid = options.grid()
    band = tolerance_band(reference, options.band_fraction)

    if not np.any(reference.values):
        # zero reference: the response is zero as well
        return BandwidthResult(float(grid[0]), 1.0, 0.0, True)

    best = 0.0
    for frequency in grid:
        fraction = _fraction(reference, hz_to_rad(float(frequency)), band)
        if fraction >= options.pass_fraction:
            return BandwidthResult(float(frequency), fraction, band, True)
        best = max(best, fraction)

    logger.debug(
        f"No bandwidth up to {grid[-1]:g} Hz tracks {reference.joint} of finger "
        f"{reference.finger_index} (best fraction {best:.4f})"
    )
    return BandwidthResult(None, best, band, False)


def _fraction(
    reference: JointTorqueTrajectory, bandwidth_rad: float, band: float
) -> float:
    return pass_fraction(reference, bandwidth_rad, band)


@log_performance
def bandwidth_sweep(
    reference: JointTorqueTrajectory, sweep: Optional[SweepOptions] = None
) -> BandwidthSweep:
    """Pass fraction at every grid point, for plotting."""
    options = sweep or SweepOptions()
    grid = options.grid()
    band = tolerance_band(reference, options.band_fraction)
    fractions = np.array(
        [_fraction(reference, hz_to_rad(float(f)), band) for f in grid]
    )
    return BandwidthSweep(grid, fractions, band)


def rise_time(
    response: ArrayLike,
    sample_rate: Optional[float] = None,
    target: Optional[float] = None,
) -> float:
    """10 %–90 % rise time (s) of a measured step response.

    Crossing instants are linearly interpolated between samples.

    Args:
        response: Step response samples (trajectory or array)
        sample_rate: Required when ``response`` is a plain array (Hz)
        target: Final value; defaults to the last sample

    Raises:
        DomainError: Missing sample rate, zero target, or a response that
            never crosses 90 %
    """
    if isinstance(response, JointTorqueTrajectory):
        values, rate = response.values, response.sample_rate
    else:
        values = np.asarray(response, dtype=float).reshape(-1)
        rate = sample_rate
    if rate is None or not rate > 0:
        raise DomainError("A positive sample rate is required")
    final = float(values[-1]) if target is None else float(target)
    if final == 0.0:
        raise DomainError("Step target must be non-zero")

    normalized = values / final

    def crossing(level: float) -> float:
        above = np.flatnonzero(normalized >= level)
        if above.size == 0:
            raise DomainError(f"Response never reaches {level:.0%} of its target")
        k = int(above[0])
        if k == 0:
            return 0.0
        y0, y1 = normalized[k - 1], normalized[k]
        return (k - 1 + (level - y0) / (y1 - y0)) / rate

    return float(crossing(0.9) - crossing(0.1))


def bandwidth_from_rise_time(rise_time_s: float) -> float:
    """Bandwidth (Hz) approximated as 0.35 / t_r."""
    if not (math.isfinite(rise_time_s) and rise_time_s > 0):
        raise DomainError(f"Rise time must be positive, got {rise_time_s!r}")
    return RISE_TIME_CONSTANT / float(rise_time_s)


BANDWIDTH_COLUMNS = (
    "finger",
    "joint",
    "bandwidth_Hz",
    "pass_fraction",
    "tolerance_band_Nm",
    "passed",
)


def bandwidth_to_csv(
    rows: Iterable[Tuple[int, str, BandwidthResult]], seed: Optional[int] = None
) -> str:
    """CSV of (finger, joint, result) rows; failed searches have no bandwidth."""
    lines = [f"# seed={seed}"] if seed is not None else []
    lines.append(",".join(BANDWIDTH_COLUMNS))
    for finger, joint, result in rows:
        bandwidth = "" if result.bandwidth is None else repr(float(result.bandwidth))
        passed = "true" if result.passed else "false"
        lines.append(
            f"{finger},{joint},{bandwidth},{float(result.pass_fraction)!r},"
            f"{float(result.tolerance_band)!r},{passed}"
        )
    return "\n".join(lines) + "\n"


def sweep_to_csv(sweep: BandwidthSweep) -> str:
    lines = [
        f"# tolerance_band_Nm={float(sweep.tolerance_band)!r}",
        "bandwidth_Hz,pass_fraction",
    ]
    lines.extend(f"{b!r},{p!r}" for b, p in sweep.rows())
    return "\n".join(lines) + "\n"
