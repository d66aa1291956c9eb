"""Grasp Force Distribution Service.

Distributes a measured tool-base wrench over the contacts of a grasp by
solving, per timestep, a constrained nonlinear program:

    minimize    sum over fingers and joints of tau**4
    subject to  static equilibrium of the handle (6 equations)
                friction cone per contact
                center of pressure inside its pressure disc
                non-negative normal forces

Joint torques come from the contact Jacobians evaluated at the nominal
contacts. The palm contact takes part in equilibrium only.

Features:
- SLSQP with analytic gradients for objective and constraints
- Multi-start (warm start, nominal start, seeded perturbations)
- Equilibrium polish and strict feasibility checks on every candidate
- Trajectory solves with warm starts and infeasible-step bookkeeping

Usage:
    from fingerreq.services.grasp_optimizer import GraspOptimizer

    optimizer = GraspOptimizer(grasp, SolverOptions())
    solution = optimizer.solve(Wrench(F_z=4.0))
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional

import numpy as np
from scipy.optimize import minimize

from fingerreq.models.finger import contact_jacobian
from fingerreq.models.grasp import ContactSolution, GraspConfig
from fingerreq.models.options import SolverOptions
from fingerreq.models.torque import TorqueRequirements
from fingerreq.models.wrench import Wrench, WrenchTrajectory
from fingerreq.utils.logging_config import (
    PerformanceLogger,
    get_logger,
    log_diagnostic_event,
)

logger = get_logger(__name__)

REGULARIZATION = 1e-9
TIE_TOL = 1e-9
NEGATIVE_NORMAL_TOL = 1e-12
PERTURBATION_SCALE = 0.5


@dataclass(frozen=True, eq=False)
class ContactVariables:
    """Per-contact forces (N) and locations (m, rad)."""

    normal: np.ndarray
    f_theta: np.ndarray
    f_z: np.ndarray
    z: np.ndarray
    theta: np.ndarray


def equilibrium_matrix(radius: float, z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Linear map from per-contact forces to the handle wrench.

    Columns are grouped per contact as (N, f_theta, f_z); rows are
    (Fx, Fy, Fz, Tx, Ty, Tz).
    """
    c, s = np.cos(theta), np.sin(theta)
    zero, one = np.zeros_like(c), np.ones_like(c)
    n_contacts = z.size
    A = np.zeros((6, n_contacts, 3))
    A[:, :, 0] = [c, s, zero, -z * s, z * c, zero]
    A[:, :, 1] = [-s, c, zero, -z * c, -z * s, radius * one]
    A[:, :, 2] = [zero, zero, one, radius * s, -radius * c, zero]
    return A.reshape(6, 3 * n_contacts)


def equilibrium_residual(wrench: Wrench, config: GraspConfig, candidate) -> np.ndarray:
    """Residual of the six equilibrium equations (N, N, N, N·m, N·m, N·m).

    Args:
        wrench: Measured tool-base wrench
        config: Grasp configuration (provides the handle radius)
        candidate: Object with per-contact ``normal``, ``f_theta``, ``f_z``,
            ``z`` and ``theta`` arrays (ContactVariables or ContactSolution)

    Returns:
        wrench minus the wrench produced by the contact forces
    """
    z = np.asarray(candidate.z, dtype=float)
    theta = np.asarray(candidate.theta, dtype=float)
    forces = np.column_stack(
        [
            np.asarray(candidate.normal, float),
            np.asarray(candidate.f_theta, float),
            np.asarray(candidate.f_z, float),
        ]
    )
    A = equilibrium_matrix(config.cylinder.radius, z, theta)
    return wrench.as_array() - A @ forces.ravel()


class GraspOptimizer:
    """Per-timestep force distribution for one grasp.

    Contact Jacobians and other per-grasp quantities are computed once at
    construction, so one instance serves a whole trajectory.
    """

    def __init__(self, config: GraspConfig, options: Optional[SolverOptions] = None):
        """Initialize the optimizer.

        Args:
            config: Grasp configuration
            options: Solver options (defaults if omitted)
        """
        self.config = config
        self.options = options or SolverOptions()
        self.logger = get_logger(f"{__name__}.{self.__class__.__name__}")

        self.radius = config.cylinder.radius
        self.z_bar, self.theta_bar, self.pressure_radius = config.nominal_arrays()
        self.n_contacts = config.n_contacts
        self.frozen = self.options.freeze_positions
        self.per_contact = 3 if self.frozen else 5
        self.n_vars = self.per_contact * self.n_contacts
        self.kappa = config.friction_mu * (1.0 - self.options.cone_margin)

        jacobians = []
        for placement, contact in zip(config.fingers, config.contacts[:3]):
            frame = config.cylinder.contact_frame(contact.nominal_theta)
            jacobians.append(
                contact_jacobian(
                    placement.geometry,
                    placement.joint_angles,
                    frame,
                    placement.base_pose,
                )
            )
        self.jacobians = np.stack(jacobians)
        # variables are ordered (N, f_theta, f_z); Jacobian rows are (N, f_z, f_theta)
        self.torque_maps = np.stack([J.T[:, [0, 2, 1]] for J in self.jacobians])
        reaches = [p.geometry.reach for p in config.fingers]
        self.reference_length = float(np.mean(reaches))

        bounds = [(0.0, None), (None, None), (None, None)]
        if not self.frozen:
            bounds += [(-1.0, 1.0), (-1.0, 1.0)]
        self.bounds = bounds * self.n_contacts
        self.nominal_matrix = equilibrium_matrix(
            self.radius, self.z_bar, self.theta_bar
        )

    # ------------------------------------------------------------------
    # problem functions (scaled variables)

    def _unpack(self, y: np.ndarray) -> np.ndarray:
        return y.reshape(self.n_contacts, self.per_contact)

    def _positions(self, Y: np.ndarray):
        if self.frozen:
            return self.z_bar, self.theta_bar
        z = self.z_bar + self.pressure_radius * Y[:, 3]
        theta = self.theta_bar + (self.pressure_radius / self.radius) * Y[:, 4]
        return z, theta

    def _scaled_torques(self, y: np.ndarray) -> np.ndarray:
        forces = self._unpack(y)[:3, :3]
        return np.einsum("fjk,fk->fj", self.torque_maps, forces) / self.reference_length

    def _objective(self, y: np.ndarray) -> float:
        """Sum of tau**4, torques scaled by force scale times mean finger reach."""
        tau = self._scaled_torques(y)
        forces = self._unpack(y)[:, :3]
        return float(np.sum(tau**4) + REGULARIZATION * np.sum(forces**2))

    def _objective_grad(self, y: np.ndarray) -> np.ndarray:
        tau = self._scaled_torques(y)
        grad = np.zeros((self.n_contacts, self.per_contact))
        pulled = np.einsum("fjk,fj->fk", self.torque_maps, tau**3)
        grad[:3, :3] = 4.0 * pulled / self.reference_length
        grad[:, :3] += 2.0 * REGULARIZATION * self._unpack(y)[:, :3]
        return grad.ravel()

    def _equality(self, y: np.ndarray, target: np.ndarray) -> np.ndarray:
        Y = self._unpack(y)
        n, a, b = Y[:, 0], Y[:, 1], Y[:, 2]
        z, theta = self._positions(Y)
        c, s = np.cos(theta), np.sin(theta)
        fx = n * c - a * s
        fy = n * s + a * c
        zr = z / self.radius
        totals = np.array(
            [
                fx.sum(),
                fy.sum(),
                b.sum(),
                np.sum(-zr * fy + s * b),
                np.sum(zr * fx - c * b),
                a.sum(),
            ]
        )
        return totals - target

    def _equality_jac(self, y: np.ndarray, target: np.ndarray) -> np.ndarray:
        # SLSQP hands the constraint args to the Jacobian too; target drops out
        Y = self._unpack(y)
        n, a, b = Y[:, 0], Y[:, 1], Y[:, 2]
        z, theta = self._positions(Y)
        c, s = np.cos(theta), np.sin(theta)
        fx = n * c - a * s
        fy = n * s + a * c
        zr = z / self.radius

        J = np.zeros((6, self.n_contacts, self.per_contact))
        J[0, :, 0], J[0, :, 1] = c, -s
        J[1, :, 0], J[1, :, 1] = s, c
        J[2, :, 2] = 1.0
        J[3, :, 0], J[3, :, 1], J[3, :, 2] = -zr * s, -zr * c, s
        J[4, :, 0], J[4, :, 1], J[4, :, 2] = zr * c, -zr * s, -c
        J[5, :, 1] = 1.0
        if not self.frozen:
            d_theta = self.pressure_radius / self.radius
            d_z = self.pressure_radius
            J[0, :, 4] = -fy * d_theta
            J[1, :, 4] = fx * d_theta
            J[3, :, 3] = -fy / self.radius * d_z
            J[3, :, 4] = (-zr * fx + c * b) * d_theta
            J[4, :, 3] = fx / self.radius * d_z
            J[4, :, 4] = (-zr * fy + s * b) * d_theta
        return J.reshape(6, self.n_vars)

    def _inequality(self, y: np.ndarray) -> np.ndarray:
        Y = self._unpack(y)
        cone = (self.kappa * Y[:, 0]) ** 2 - Y[:, 1] ** 2 - Y[:, 2] ** 2
        if self.frozen:
            return cone
        disc = 1.0 - Y[:, 3] ** 2 - Y[:, 4] ** 2
        return np.concatenate([cone, disc])

    def _inequality_jac(self, y: np.ndarray) -> np.ndarray:
        Y = self._unpack(y)
        rows = 2 * self.n_contacts if not self.frozen else self.n_contacts
        J = np.zeros((rows, self.n_contacts, self.per_contact))
        idx = np.arange(self.n_contacts)
        J[idx, idx, 0] = 2.0 * self.kappa**2 * Y[:, 0]
        J[idx, idx, 1] = -2.0 * Y[:, 1]
        J[idx, idx, 2] = -2.0 * Y[:, 2]
        if not self.frozen:
            J[self.n_contacts + idx, idx, 3] = -2.0 * Y[:, 3]
            J[self.n_contacts + idx, idx, 4] = -2.0 * Y[:, 4]
        return J.reshape(rows, self.n_vars)

    def constraints(self, target: np.ndarray) -> List[dict]:
        """SLSQP constraint dicts for a scaled target wrench."""
        return [
            {
                "type": "eq",
                "fun": self._equality,
                "jac": self._equality_jac,
                "args": (target,),
            },
            {"type": "ineq", "fun": self._inequality, "jac": self._inequality_jac},
        ]

    # ------------------------------------------------------------------
    # starts

    def _lift_normals(self, forces: np.ndarray) -> np.ndarray:
        forces = forces.copy()
        needed = np.hypot(forces[:, 1], forces[:, 2]) / self.kappa * 1.05
        forces[:, 0] = np.maximum(np.abs(forces[:, 0]), needed)
        return forces

    def _nominal_start(self, nominal_forces: np.ndarray) -> np.ndarray:
        Y = np.zeros((self.n_contacts, self.per_contact))
        Y[:, :3] = self._lift_normals(nominal_forces)
        return Y.ravel()

    def _perturbed_start(self, nominal_forces: np.ndarray, index: int) -> np.ndarray:
        rng = np.random.default_rng([int(self.options.seed), index])
        Y = np.zeros((self.n_contacts, self.per_contact))
        noise = rng.normal(0.0, PERTURBATION_SCALE, size=(self.n_contacts, 3))
        Y[:, :3] = self._lift_normals(nominal_forces + noise)
        if not self.frozen:
            radius = 0.9 * np.sqrt(rng.random(self.n_contacts))
            angle = 2.0 * math.pi * rng.random(self.n_contacts)
            Y[:, 3] = radius * np.cos(angle)
            Y[:, 4] = radius * np.sin(angle)
        return Y.ravel()

    def _warm_vector(
        self, warm: Optional[ContactSolution], scale: float
    ) -> Optional[np.ndarray]:
        if warm is None or not warm.feasible:
            return None
        if np.asarray(warm.normal).size != self.n_contacts:
            return None
        Y = np.zeros((self.n_contacts, self.per_contact))
        Y[:, 0] = np.asarray(warm.normal) / scale
        Y[:, 1] = np.asarray(warm.f_theta) / scale
        Y[:, 2] = np.asarray(warm.f_z) / scale
        if not self.frozen:
            Y[:, 3] = (np.asarray(warm.z) - self.z_bar) / self.pressure_radius
            d_theta = np.asarray(warm.theta) - self.theta_bar
            Y[:, 4] = d_theta * self.radius / self.pressure_radius
        return Y.ravel()

    # ------------------------------------------------------------------
    # post-processing

    def _finalize(
        self, y: np.ndarray, wrench: np.ndarray, scale: float, iterations: int
    ) -> ContactSolution:
        Y = self._unpack(np.array(y, dtype=float)).copy()
        if not self.frozen:
            norms = np.hypot(Y[:, 3], Y[:, 4])
            over = norms > 1.0
            Y[over, 3:5] /= norms[over, None]
        Y[:, 0] = np.maximum(Y[:, 0], 0.0)
        z, theta = self._positions(Y)

        forces = Y[:, :3] * scale
        tangential = np.hypot(forces[:, 1], forces[:, 2])
        capacity = self.kappa * forces[:, 0]
        outside = tangential > capacity
        if np.any(outside):
            ratio = capacity[outside] / np.maximum(tangential[outside], 1e-300)
            shrink = np.where(tangential[outside] > 0, ratio, 0.0)
            forces[outside, 1:] *= shrink[:, None]

        # least-norm equilibrium correction over forces not pinned at N = 0
        A = equilibrium_matrix(self.radius, z, theta)
        active = np.repeat(forces[:, 0] > 0.0, 3)
        if np.any(active):
            residual = wrench - A @ forces.ravel()
            delta = np.linalg.lstsq(A[:, active], residual, rcond=None)[0]
            flat = forces.ravel()
            flat[active] += delta
            forces = flat.reshape(self.n_contacts, 3)
            forces[:, 0] = np.maximum(forces[:, 0], 0.0)

        normal, f_theta, f_z = forces[:, 0], forces[:, 1], forces[:, 2]
        residual = wrench - A @ forces.ravel()
        torques = np.einsum("fjk,fk->fj", self.torque_maps, forces[:3])

        mu = self.config.friction_mu
        eq_violation = float(np.max(np.abs(residual)))
        cone_violation = float(np.max(f_theta**2 + f_z**2 - (mu * normal) ** 2))
        arc = self.radius * (theta - self.theta_bar)
        offset_sq = (z - self.z_bar) ** 2 + arc**2
        pressure_violation = float(np.max(offset_sq - self.pressure_radius**2))
        negative = float(np.max(-normal))
        feasible = (
            eq_violation <= self.options.equilibrium_tol
            and cone_violation <= self.options.cone_tol
            and pressure_violation <= self.options.pressure_tol
            and negative <= NEGATIVE_NORMAL_TOL
        )
        return ContactSolution(
            normal=normal.copy(),
            f_theta=f_theta.copy(),
            f_z=f_z.copy(),
            z=np.array(z, dtype=float),
            theta=np.array(theta, dtype=float),
            torques=torques,
            objective_value=float(np.sum(torques**4)),
            feasible=bool(feasible),
            max_violation=max(
                eq_violation, cone_violation, pressure_violation, negative, 0.0
            ),
            residual=residual,
            iterations=iterations,
        )

    def _kkt_residual(self, y: np.ndarray, target: np.ndarray) -> float:
        """Stationarity residual with least-squares multipliers on active rows."""
        grad = self._objective_grad(y)
        rows = [self._equality_jac(y, target)]
        ineq = self._inequality(y)
        active = np.abs(ineq) <= 1e-8
        if np.any(active):
            rows.append(self._inequality_jac(y)[active])
        for k, (lo, hi) in enumerate(self.bounds):
            at_lo = lo is not None and y[k] <= lo + 1e-12
            at_hi = hi is not None and y[k] >= hi - 1e-12
            if at_lo or at_hi:
                unit = np.zeros(self.n_vars)
                unit[k] = 1.0
                rows.append(unit[None, :])
        A = np.vstack(rows)
        multipliers = np.linalg.lstsq(A.T, grad, rcond=None)[0]
        stationarity = np.linalg.norm(grad - A.T @ multipliers)
        return float(stationarity / max(1.0, np.linalg.norm(grad)))

    # ------------------------------------------------------------------

    def _zero_solution(self) -> ContactSolution:
        zeros = np.zeros(self.n_contacts)
        return ContactSolution(
            normal=zeros.copy(),
            f_theta=zeros.copy(),
            f_z=zeros.copy(),
            z=self.z_bar.copy(),
            theta=self.theta_bar.copy(),
            torques=np.zeros((3, 3)),
            objective_value=0.0,
            feasible=True,
            residual=np.zeros(6),
        )

    def solve(
        self, wrench: Wrench, warm_start: Optional[ContactSolution] = None
    ) -> ContactSolution:
        """Solve one timestep.

        Args:
            wrench: Tool-base wrench
            warm_start: Previous solution used as an extra first start

        Returns:
            Best feasible ContactSolution over all starts, or the least
            violating candidate with ``feasible=False``
        """
        w = wrench.as_array()
        if not np.any(w):
            return self._zero_solution()

        nominal = np.linalg.lstsq(self.nominal_matrix, w, rcond=None)[0]
        scale = float(np.linalg.norm(nominal)) or float(np.linalg.norm(w))
        nominal_forces = (nominal / scale).reshape(self.n_contacts, 3)
        target = np.concatenate([w[:3], w[3:] / self.radius]) / scale

        starts: List[np.ndarray] = []
        warm = self._warm_vector(warm_start, scale) if self.options.warm_start else None
        if warm is not None:
            starts.append(warm)
        starts.append(self._nominal_start(nominal_forces))
        starts.extend(
            self._perturbed_start(nominal_forces, k)
            for k in range(1, self.options.restarts)
        )

        constraints = self.constraints(target)

        candidates = []
        for y0 in starts:
            try:
                result = minimize(
                    self._objective,
                    y0,
                    jac=self._objective_grad,
                    method="SLSQP",
                    bounds=self.bounds,
                    constraints=constraints,
                    options={
                        "maxiter": self.options.max_iter,
                        "ftol": self.options.ftol,
                    },
                )
            except (ValueError, np.linalg.LinAlgError) as e:
                self.logger.debug(f"SLSQP start failed: {e}")
                continue
            candidate = self._finalize(result.x, w, scale, int(result.nit))
            candidates.append((candidate, result.x))

        if not candidates:
            return self._infeasible(w)

        feasible = [(c, x) for c, x in candidates if c.feasible]
        if not feasible:
            best, _ = min(candidates, key=lambda item: item[0].max_violation)
            return best

        best_value = min(c.objective_value for c, _ in feasible)
        tied = [
            (c, x)
            for c, x in feasible
            if c.objective_value <= best_value + TIE_TOL * max(best_value, 1e-300)
        ]
        chosen, x = min(tied, key=lambda item: item[0].force_norm)
        return replace(chosen, kkt_residual=self._kkt_residual(x, target))

    def _infeasible(self, w: np.ndarray) -> ContactSolution:
        return replace(
            self._zero_solution(),
            feasible=False,
            max_violation=float(np.max(np.abs(w))),
            residual=w.copy(),
        )

    def solve_trajectory(
        self, traj: WrenchTrajectory, task_name: str = ""
    ) -> TorqueRequirements:
        """Solve every timestep sequentially with warm starts.

        Infeasible timesteps keep the last feasible torques in the stored
        trajectories and are excluded from the peaks.

        Args:
            traj: Wrench trajectory
            task_name: Name used in diagnostics

        Returns:
            TorqueRequirements
        """
        n = len(traj)
        torques = np.zeros((n, 3, 3))
        feasible = np.zeros(n, dtype=bool)
        objective = np.full(n, np.nan)
        previous: Optional[ContactSolution] = None
        last_torques = np.zeros((3, 3))

        label = f"solve_trajectory[{task_name or self.config.name}]"
        with PerformanceLogger(label, self.logger):
            for k in range(n):
                solution = self.solve(traj[k], warm_start=previous)
                if solution.feasible:
                    previous = solution
                    last_torques = solution.torques
                    feasible[k] = True
                    objective[k] = solution.objective_value
                else:
                    log_diagnostic_event(
                        "infeasible_timestep",
                        f"Timestep {k} of '{task_name}' is infeasible",
                        {"step": k, "max_violation": solution.max_violation},
                        level=logging.DEBUG,
                    )
                torques[k] = last_torques

        warning = None
        infeasible = int(np.count_nonzero(~feasible))
        if n and infeasible / n > self.options.infeasible_threshold:
            warning = (
                f"{infeasible} of {n} timesteps infeasible "
                f"({100.0 * infeasible / n:.1f}% > "
                f"{100.0 * self.options.infeasible_threshold:g}%)"
            )
            log_diagnostic_event(
                "infeasible_task",
                f"Task '{task_name}': {warning}",
                {"infeasible_steps": infeasible, "steps": n},
            )
        return TorqueRequirements(
            traj.sample_rate, torques, feasible, objective, warning
        )


def solve_timestep(
    wrench: Wrench,
    config: GraspConfig,
    options: Optional[SolverOptions] = None,
    warm_start: Optional[ContactSolution] = None,
) -> ContactSolution:
    """Solve the force distribution of a single wrench sample."""
    return GraspOptimizer(config, options).solve(wrench, warm_start)


def solve_trajectory(
    traj: WrenchTrajectory,
    config: GraspConfig,
    options: Optional[SolverOptions] = None,
    task_name: str = "",
) -> TorqueRequirements:
    """Solve a whole trajectory with warm starts (see GraspOptimizer)."""
    return GraspOptimizer(config, options).solve_trajectory(traj, task_name)
