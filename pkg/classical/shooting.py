"""
Exact reference solution of the full nonlinear mean-field equations by Newton shooting.

The unknowns are the three backward amplitudes at z=0. Each shot integrates the six field equations together
with their variational equations, so the Jacobian of the terminal residual comes from the same RK4 pass.
"""

import logging

import numpy as np

import config as settings
from classical.analytic import solve_classical_analytic
from classical.errors import DegenerateBoundary, ShootingNotConverged
from classical.profile import ClassicalFieldProfile
from fluctuations.generator import coefficient_frame, generator_matrix
from waveguide.couplings import field_derivatives
from waveguide.integrate import rk4_step, step_count
from waveguide.model import ClassicalBoundary, WaveguideConfig

__all__ = ("ShootingProfile", "solve_classical_bvp_shooting", "shoot")

log = logging.getLogger(__name__)

MAX_BACKTRACKS = 12


class ShootingProfile(ClassicalFieldProfile):
    """
    Profile sampled at the RK4 nodes. Off-node values take one RK4 sub-step from the preceding node, which keeps
    the interpolation error at the order of the integrator.
    """

    provenance = "shooting"

    def __init__(self, config, boundary, grid, values, residual: float, iterations: int):
        super().__init__(config, boundary, grid)
        self.values = values
        self.residual = residual
        self.iterations = iterations
        self._h = grid[1] - grid[0]

    def __call__(self, z):
        scalar = np.ndim(z) == 0
        z = np.clip(np.atleast_1d(np.asarray(z, dtype=float)), 0.0, self.length)
        node = np.minimum(np.floor(z / self._h).astype(int), len(self.grid) - 1)
        offset = z - self.grid[node]
        rhs = lambda zz, y: field_derivatives(self.config, zz, y)  # noqa: E731
        out = rk4_step(rhs, self.grid[node], self.values[:, node], offset)
        return out[:, 0] if scalar else out

    def sampled(self):
        return self.grid, self.values


def _augmented_rhs(config: WaveguideConfig):
    def rhs(z, state):
        y = state[:6]
        tangent = state[6:].reshape(12, 6)
        g = generator_matrix(coefficient_frame(config, z, y))
        return np.concatenate((field_derivatives(config, z, y), (g @ tangent).ravel()))

    return rhs


def shoot(config: WaveguideConfig, boundary: ClassicalBoundary, backward0, grid):
    """
    Integrates from z=0 with forward amplitudes from *boundary* and backward amplitudes *backward0*.

    :returns: (values on the grid (6, n+1), terminal residual (A_sB, A_iB, A_pB at L), 6x6 Jacobian of the
        interleaved residual (R, R*) with respect to the interleaved unknowns (b, b*))
    """
    h = grid[1] - grid[0]
    y0 = np.array([boundary.A_sF0, boundary.A_iF0, boundary.A_pF0, *backward0], dtype=complex)
    tangent0 = np.zeros((12, 6), dtype=complex)
    tangent0[6:, :] = np.eye(6)
    state = np.concatenate((y0, tangent0.ravel()))
    rhs = _augmented_rhs(config)

    values = np.empty((6, len(grid)), dtype=complex)
    values[:, 0] = y0
    for k in range(len(grid) - 1):
        state = rk4_step(rhs, grid[k], state, h)
        values[:, k + 1] = state[:6]
    jacobian = state[6:].reshape(12, 6)[6:, :]
    return values, values[3:, -1], jacobian


def _initial_guess(config, boundary):
    try:
        analytic = solve_classical_analytic(config, boundary, steps=1)
    except DegenerateBoundary as e:
        log.warning(f"analytic initial guess unavailable ({e}); starting shooting from zero backward fields")
        return np.zeros(3, dtype=complex)
    guess = analytic(0.0)[3:]
    if not np.all(np.isfinite(guess)):
        log.warning("analytic initial guess is not finite; starting shooting from zero backward fields")
        return np.zeros(3, dtype=complex)
    return guess


def solve_classical_bvp_shooting(
    config: WaveguideConfig,
    boundary: ClassicalBoundary,
    grid_steps: int = None,
    tolerance: float = None,
    max_iter: int = None,
    initial_guess=None,
) -> ShootingProfile:
    """
    Solves the nonlinear two-point boundary value problem by Newton iteration on the backward amplitudes at z=0.

    :param grid_steps: number of RK4 steps over [0, L] (default from ``STEPS_PER_MM``)
    :param tolerance: terminal residual norm to reach, relative to max(1, |A_pF0|)
    :param initial_guess: backward amplitudes (sB, iB, pB) at z=0; defaults to the analytic solution
    :raises ShootingNotConverged: when Newton runs out of iterations or the Jacobian is singular
    """
    n = step_count(config.L, grid_steps)
    grid = np.linspace(0.0, config.L, n + 1)
    if tolerance is None:
        tolerance = settings.SHOOTING_TOLERANCE
    if max_iter is None:
        max_iter = settings.NEWTON_MAX_ITER
    target = tolerance * max(1.0, abs(boundary.A_pF0))

    b = _initial_guess(config, boundary) if initial_guess is None else np.asarray(initial_guess, dtype=complex)
    values, residual, jacobian = shoot(config, boundary, b, grid)
    norm = np.linalg.norm(residual)

    for iteration in range(max_iter + 1):
        log.debug(f"shooting iteration {iteration}: residual {norm:.3e}")
        if norm <= target:
            return ShootingProfile(config, boundary, grid, values, float(norm), iteration)
        if iteration == max_iter or not np.isfinite(norm):
            break

        rhs = -np.repeat(residual, 2)
        rhs[1::2] = np.conj(rhs[1::2])
        try:
            step = np.linalg.solve(jacobian, rhs)[0::2]
        except np.linalg.LinAlgError:
            break

        accepted = _backtrack(config, boundary, grid, b, step, norm)
        if accepted is None:
            log.debug(f"shooting iteration {iteration}: no improving step after {MAX_BACKTRACKS} backtracks")
            raise ShootingNotConverged(float(norm), iteration)
        b, values, residual, jacobian, norm = accepted

    raise ShootingNotConverged(float(norm), max_iter)


def _backtrack(config, boundary, grid, b, step, norm):
    """Halves the Newton step until the terminal residual decreases; ``None`` when no finite trial improves it."""
    scale = 1.0
    for _ in range(MAX_BACKTRACKS):
        trial = b + scale * step
        scale /= 2
        # trial shots may overflow far from the solution
        with np.errstate(over="ignore", invalid="ignore"):
            trial_values, trial_residual, trial_jacobian = shoot(config, boundary, trial, grid)
            trial_norm = np.linalg.norm(trial_residual)
        if not (np.isfinite(trial_norm) and np.all(np.isfinite(trial_jacobian))):
            continue
        if trial_norm < norm:
            return trial, trial_values, trial_residual, trial_jacobian, trial_norm
    return None
