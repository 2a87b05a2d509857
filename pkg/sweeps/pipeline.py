"""
The full chain for one parameter point: classical profile, transfer matrix, input-output map, output moments
and the requested observables.
"""

import dataclasses
import logging
from typing import Dict, Optional, Union

import config as settings
from classical import solve_classical_analytic, solve_classical_bvp_shooting
from classical.profile import ClassicalFieldProfile
from fluctuations import InputOutputMap, integrate_transfer, rearrange_input_output
from fluctuations.generator import coefficient_matrix
from quantumstats import (
    GaussianMoments,
    input_moments,
    intensity_moments,
    mc_oracle,
    propagate_second_moments,
    squeeze,
)
from sweeps.spec import Observable, PointSpec
from waveguide.integrate import step_count

__all__ = ("PipelineState", "PointResult", "run_pipeline", "evaluate_point", "observable_value")

log = logging.getLogger(__name__)


@dataclasses.dataclass
class PipelineState:
    point: PointSpec
    profile: ClassicalFieldProfile
    iomap: InputOutputMap
    moments: GaussianMoments
    commutator_residual: float
    commutator_normalized: float


@dataclasses.dataclass
class PointResult:
    values: Dict[str, Union[float, str, None]]
    commutator_residual: Optional[float] = None
    commutator_normalized: Optional[float] = None
    cond_ubb: Optional[float] = None
    error: Optional[str] = None


def solve_profile(point: PointSpec) -> ClassicalFieldProfile:
    solver = point.solver
    steps = step_count(point.config.L, solver.steps, solver.steps_per_mm)
    if solver.classical == "analytic":
        return solve_classical_analytic(point.config, point.boundary, steps=steps)
    return solve_classical_bvp_shooting(
        point.config, point.boundary, grid_steps=steps, tolerance=solver.shooting_tolerance
    )


def run_pipeline(point: PointSpec, generator=coefficient_matrix) -> PipelineState:
    solver = point.solver
    profile = solve_profile(point)
    steps = step_count(point.config.L, solver.steps, solver.steps_per_mm)
    transfer = integrate_transfer(point.config, profile, steps, generator=generator)
    iomap = rearrange_input_output(transfer, solver.cond_threshold)
    moments = propagate_second_moments(iomap, point.inputs)
    return PipelineState(
        point=point,
        profile=profile,
        iomap=iomap,
        moments=moments,
        commutator_residual=iomap.residual,
        commutator_normalized=iomap.normalized_residual,
    )


def observable_value(state: PipelineState, observable: Observable, seed: int = 0):
    name, modes = observable
    if name in ("lambda", "var_q", "var_p"):
        report = squeeze(state.moments, modes)
        return {"lambda": report.lambda_, "var_q": report.var_q, "var_p": report.var_p}[name]
    if name in ("mean_W", "var_W", "fano", "R_W"):
        report = intensity_moments(state.moments, modes)
    elif name == "R_W_in":
        report = intensity_moments(input_moments(state.point.inputs), modes)
        name = "R_W"
    else:
        report = mc_oracle(state.moments, modes, state.point.solver.mc_samples, seed)
        name = name[: -len("_mc")]
    value = getattr(report, name)
    return "undefined" if value is None else value


def evaluate_point(point: PointSpec, seed: int = None) -> PointResult:
    """
    Runs the pipeline and evaluates every requested observable. Solver failures propagate; a commutator residual above
    tolerance is reported in ``error`` with the values kept.
    """
    if seed is None:
        seed = point.seed
    state = run_pipeline(point)
    values = {o.column: observable_value(state, o, seed) for o in point.parsed_observables}
    tolerance = point.solver.commutator_tolerance or settings.COMMUTATOR_TOLERANCE
    result = PointResult(
        values=values,
        commutator_residual=state.commutator_residual,
        commutator_normalized=state.commutator_normalized,
        cond_ubb=state.iomap.condition_number,
    )
    if state.commutator_normalized > tolerance:
        log.warning(f"commutator residual {state.commutator_normalized:.3e} above tolerance {tolerance:.1e}")
        result.error = f"commutator residual {state.commutator_normalized:.3e} above tolerance {tolerance:.1e}"
    return result
