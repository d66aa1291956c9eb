"""Services Package.

Computation layer: trajectory I/O, grasp force optimization, sensitivity
studies, bandwidth analysis, actuator sizing, reporting and the suite
pipeline.

Usage:
    from fingerreq.services import GraspOptimizer, min_bandwidth
"""

from fingerreq.services.actuator_sizing import (
    collision_torque,
    gear_strength,
    motor_torque,
    natural_frequency,
    sea_window,
    size_actuator,
)
from fingerreq.services.bandwidth import (
    bandwidth_from_rise_time,
    bandwidth_sweep,
    min_bandwidth,
    rise_time,
    simulate_first_order,
)
from fingerreq.services.grasp_optimizer import (
    GraspOptimizer,
    equilibrium_residual,
    solve_timestep,
    solve_trajectory,
)
from fingerreq.services.report_service import compare, summarize_tasks

__all__ = [
    "GraspOptimizer",
    "bandwidth_from_rise_time",
    "bandwidth_sweep",
    "collision_torque",
    "compare",
    "equilibrium_residual",
    "gear_strength",
    "min_bandwidth",
    "motor_torque",
    "natural_frequency",
    "rise_time",
    "sea_window",
    "simulate_first_order",
    "size_actuator",
    "solve_timestep",
    "solve_trajectory",
    "summarize_tasks",
]
