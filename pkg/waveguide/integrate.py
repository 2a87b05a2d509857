"""
Fixed-step classical fourth-order Runge-Kutta integration.
"""

import math

import config as settings
from lib.errors import InvalidSolverOption


def step_count(length: float, steps: int = None, steps_per_mm: int = None, strict: bool = True) -> int:
    """
    Number of integration steps for a structure of *length* mm.

    Explicit *steps* win; otherwise ``steps_per_mm * length`` rounded up, never below ``settings.MIN_STEPS``.
    Convergence studies pass ``strict=False`` to allow explicit step counts under the minimum.
    """
    if steps is not None:
        if steps < 1 or (strict and steps < settings.MIN_STEPS):
            raise InvalidSolverOption(f"at least {settings.MIN_STEPS} integration steps are required, got {steps}")
        return int(steps)
    if steps_per_mm is None:
        steps_per_mm = settings.STEPS_PER_MM
    return max(settings.MIN_STEPS, math.ceil(steps_per_mm * length))


def rk4_step(rhs, z, y, h):
    """One classical RK4 step of dy/dz = rhs(z, y). *y* may be any numpy array; *h* may broadcast against it."""
    k1 = rhs(z, y)
    k2 = rhs(z + h / 2, y + h / 2 * k1)
    k3 = rhs(z + h / 2, y + h / 2 * k2)
    k4 = rhs(z + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_linear_step(g0, gm, g1, y, h):
    """
    One RK4 step of the linear system dy/dz = G(z) y given the generator at the start, midpoint and end.

    Equivalent to :func:`rk4_step` but evaluates the generator twice per step instead of four times.
    """
    k1 = g0 @ y
    k2 = gm @ (y + h / 2 * k1)
    k3 = gm @ (y + h / 2 * k2)
    k4 = g1 @ (y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
