"""
Self-checks of the numerical chain: identities the model must satisfy, agreement between independent methods,
convergence of the integrators and reproducibility of sweeps.

``run_checks("fast")`` runs in about a minute; ``"full"`` adds the large Monte-Carlo comparison and the
figure landmarks.
"""

import itertools
import logging
import time
from typing import Dict, Tuple

import numpy as np

import config as settings
from classical import conservation_residual, solve_classical_analytic, solve_classical_bvp_shooting
from fluctuations import commutation_residual, integrate_transfer, rearrange_input_output
from fluctuations.generator import coefficient_matrix
from lib.errors import SimulationException
from oracle import weak_integrals, weak_squeeze
from quantumstats import intensity_moments, mc_oracle, squeeze, squeezing_table
from sweeps.csvio import sweep_csv_text
from sweeps.figures import check_landmarks, list_presets
from sweeps.pipeline import run_pipeline
from sweeps.runner import run_sweep
from sweeps.spec import PointSpec, SweepSpec
from waveguide.model import ClassicalBoundary, InputModeState, WaveguideConfig
from waveguide.modes import MODES, parse_modes, swap_signal_idler_mode
from waveguide.units import rescale_units

__all__ = ("LEVELS", "run_checks", "working_point", "random_structure", "convergence_orders", "oracle_errors")

log = logging.getLogger(__name__)

LEVELS = ("fast", "full")

CONSERVATION_CONFIGS = {"fast": 5, "full": 50}
CONSERVATION_RTOL = 1e-9
MC_STATES = {"fast": 20, "full": 100}
MC_SAMPLES = {"fast": 2 * 10**5, "full": 10**6}
WEAK_STATES = {"fast": 20, "full": 200}

CONVERGENCE_STEPS = (20, 40, 80)
CONVERGENCE_REFERENCE_STEPS = 1280
CONVERGENCE_ORDER = 4
CONVERGENCE_ORDER_TOL = 0.5

ORACLE_EPSILON = 5e-3
ORACLE_LENGTH = 0.5
ORACLE_RTOL = 2e-2
# labels whose full-model value matches the oracle to this are exact to working precision
ORACLE_ATOL = 1e-9
# relative error must fall at least linearly with the coupling strength
ORACLE_MIN_RATIO = 1.8


def working_point(length: float = 2.0) -> PointSpec:
    """The reference structure: a signal/idler band gap pumped at 10 (1e6 V/m) with weak seeds."""
    return PointSpec(
        config=WaveguideConfig(L=length, K_s=5, K_i=5, K_F=5e-2, K_B=5e-2),
        boundary=ClassicalBoundary(A_sF0=0.1, A_iF0=0.1, A_pF0=10),
        solver={"classical": "analytic"},
    )


def _outcome(name, passed, value=None, threshold=None, detail=None):
    return {"name": name, "passed": bool(passed), "value": value, "threshold": threshold, "detail": detail}


def _shooting(context):
    """The working-point profile from the shooting solver, solved once per run."""
    if "shooting" not in context:
        point = context["point"]
        context["shooting"] = solve_classical_bvp_shooting(point.config, point.boundary)
    return context["shooting"]


# ==== core ====
def check_units(_):
    roundtrip = rescale_units(rescale_units(2.5, "mm", "SI"), "SI", "mm")
    field = rescale_units(1.0, "1e6 V/m", "10 V/m")
    modes = parse_modes("sF,iB")
    passed = abs(roundtrip - 2.5) < 1e-15 and field == 1e5 and [m.position for m in modes] == [0, 4]
    detail = f"2.5 mm -> m -> mm = {roundtrip!r}, 1e6 V/m = {field!r} x 10 V/m"
    return _outcome("units and modes", passed, detail=detail)


def check_identity(_):
    point = PointSpec(config=WaveguideConfig(L=1.0), solver={"classical": "analytic"})
    state = run_pipeline(point)
    deviation = float(np.abs(state.iomap.transfer.M - np.eye(12)).max())
    table = squeezing_table(state.moments)
    vacuum = max(abs(r.lambda_ - len(r.modes)) for r in table.values())
    return _outcome(
        "uncoupled structure is the identity",
        deviation == 0 and state.commutator_residual == 0 and vacuum < 1e-15,
        value=max(deviation, vacuum),
        threshold=0.0,
    )


# ==== classical ====
def check_conservation(context):
    rng = context["rng"]
    residuals = [conservation_residual(_shooting(context))]
    for _ in range(CONSERVATION_CONFIGS[context["level"]]):
        config, boundary = random_structure(rng)
        residuals.append(conservation_residual(solve_classical_bvp_shooting(config, boundary)))
    worst = max(residuals)
    return _outcome(
        "photon flux conservation (shooting)",
        worst < CONSERVATION_RTOL,
        value=worst,
        threshold=CONSERVATION_RTOL,
        detail=f"{len(residuals)} structures including the working point",
    )


def check_symmetry(_):
    config = WaveguideConfig(L=1.0, K_s=5, K_i=3, K_F=5e-2, K_B=4e-2, delta_s=1.0, delta_i=-0.5)
    boundary = ClassicalBoundary(A_sF0=0.1, A_iF0=0.2j, A_pF0=10)
    profile = solve_classical_bvp_shooting(config, boundary)
    swapped = solve_classical_bvp_shooting(config.swap_signal_idler(), boundary.swap_signal_idler())
    grid = profile.grid
    order = [swap_signal_idler_mode(mode).position for mode in MODES]
    direct, exchanged = profile(grid), swapped(grid)[order]
    difference = float(np.abs(direct - exchanged).max() / max(1.0, np.abs(direct).max()))
    return _outcome("signal/idler exchange symmetry", difference < 1e-7, value=difference, threshold=1e-7)


# ==== fluctuations ====
def check_commutator(context):
    point = context["point"]
    transfer = integrate_transfer(point.config, _shooting(context))
    iomap = rearrange_input_output(transfer)
    residual = commutation_residual(iomap, normalized=True)
    return _outcome(
        "commutator identities at the working point",
        residual < settings.COMMUTATOR_TOLERANCE,
        value=residual,
        threshold=settings.COMMUTATOR_TOLERANCE,
    )


def _flipped_linear_coupling(config, profile, z):
    g = coefficient_matrix(config, profile, z).copy()
    g[0, 6] *= -1
    g[1, 7] *= -1
    return g


def check_mutation(context):
    """A sign error in one coupling must be caught by the commutator residual."""
    point = context["point"]
    transfer = integrate_transfer(point.config, _shooting(context), generator=_flipped_linear_coupling)
    residual = commutation_residual(rearrange_input_output(transfer), normalized=True)
    return _outcome(
        "commutator residual detects a flipped coupling sign",
        residual > settings.COMMUTATOR_TOLERANCE,
        value=residual,
        threshold=settings.COMMUTATOR_TOLERANCE,
    )


def convergence_orders(point: PointSpec = None):
    """
    Errors of M(L) at ``CONVERGENCE_STEPS`` against a fine-step reference, and the observed orders between
    successive halvings of the step.
    """
    point = point or working_point(length=0.5)
    profile = solve_classical_analytic(point.config, point.boundary)
    reference = integrate_transfer(point.config, profile, CONVERGENCE_REFERENCE_STEPS).M
    errors = []
    for steps in CONVERGENCE_STEPS:
        transfer = integrate_transfer(point.config, profile, steps, strict=False)
        errors.append(float(np.abs(transfer.M - reference).max()))
    orders = [float(np.log2(a / b)) if b > 0 else float("inf") for a, b in zip(errors, errors[1:])]
    return errors, orders


def check_convergence(_):
    errors, orders = convergence_orders()
    worst = max(abs(order - CONVERGENCE_ORDER) for order in orders)
    steps = "/".join(str(s) for s in CONVERGENCE_STEPS)
    return _outcome(
        "transfer matrix converges at fourth order",
        worst <= CONVERGENCE_ORDER_TOL,
        value=orders,
        threshold=[CONVERGENCE_ORDER - CONVERGENCE_ORDER_TOL, CONVERGENCE_ORDER + CONVERGENCE_ORDER_TOL],
        detail=(
            f"errors of M(L) at {steps} steps against {CONVERGENCE_REFERENCE_STEPS}: "
            f"{', '.join(f'{e:.3e}' for e in errors)}"
        ),
    )


def check_composition(context):
    point = context["point"]
    profile = _shooting(context)
    half = point.config.L / 2
    steps = 1000
    whole = integrate_transfer(point.config, profile, 2 * steps)
    first = integrate_transfer(point.config, profile, steps, z1=half)
    second = integrate_transfer(point.config, profile, steps, z0=half)
    composed = second @ first
    scale = max(1.0, float(np.abs(whole.M).max()))
    difference = float(np.abs(composed.M - whole.M).max() / scale)
    return _outcome("transfer matrices compose", difference < 1e-9, value=difference, threshold=1e-9)


# ==== quantum statistics ====
def random_structure(rng, scale: float = 1.0):
    """A random structure around the working point: couplings up to the working values times *scale*."""
    config = WaveguideConfig(
        L=rng.uniform(0.2, 1.0),
        K_s=scale * rng.uniform(0, 5) * np.exp(2j * np.pi * rng.random()),
        K_i=scale * rng.uniform(0, 5) * np.exp(2j * np.pi * rng.random()),
        K_F=scale * rng.uniform(0, 5e-2) * np.exp(2j * np.pi * rng.random()),
        K_B=scale * rng.uniform(0, 5e-2) * np.exp(2j * np.pi * rng.random()),
        delta_s=rng.uniform(-1, 1),
        delta_i=rng.uniform(-1, 1),
        delta_F=rng.uniform(-1, 1),
        delta_B=rng.uniform(-1, 1),
    )
    boundary = ClassicalBoundary(
        A_sF0=rng.uniform(0, 1) * np.exp(2j * np.pi * rng.random()),
        A_iF0=rng.uniform(0, 1) * np.exp(2j * np.pi * rng.random()),
        A_pF0=rng.uniform(1, 10),
    )
    return config, boundary


def _random_state(rng, weak: bool):
    config, boundary = random_structure(rng, 1e-2 if weak else 1.0)
    inputs = {}
    for mode in MODES:
        xi = complex(rng.normal(), rng.normal())
        if weak:
            inputs[mode] = InputModeState(xi=xi)
        else:
            inputs[mode] = InputModeState(
                xi=xi, r=rng.uniform(0, 0.5), theta=rng.uniform(0, 2 * np.pi), n_ch=rng.uniform(0, 1)
            )
    return PointSpec(config=config, boundary=boundary, inputs=inputs, solver={"classical": "analytic"})


def check_monte_carlo(context):
    rng = context["rng"]
    level = context["level"]
    labels = [(mode,) for mode in MODES] + list(itertools.combinations(MODES, 2))
    deviations = []
    for index in range(MC_STATES[level]):
        state = run_pipeline(_random_state(rng, weak=False))
        modes = labels[rng.integers(len(labels))]
        exact = intensity_moments(state.moments, modes)
        sampled = mc_oracle(state.moments, modes, MC_SAMPLES[level], seed=index)
        for name, error in sampled.stderr.items():
            expected = getattr(exact, name)
            if expected is None or error == 0:
                continue
            deviations.append(abs(getattr(sampled, name) - expected) / error)
    deviations = np.asarray(deviations)
    within = float(np.mean(deviations <= 3))
    worst = float(deviations.max())
    return _outcome(
        "intensity moments agree with Monte Carlo",
        within >= 0.9 and worst <= 5,
        value=within,
        threshold=0.9,
        detail=f"{len(deviations)} comparisons, worst {worst:.2f} standard errors",
    )


def check_weak_bound(context):
    rng = context["rng"]
    worst = np.inf
    for _ in range(WEAK_STATES[context["level"]]):
        state = run_pipeline(_random_state(rng, weak=True))
        worst = min(worst, min(squeeze(state.moments, mode).lambda_ for mode in MODES))
    return _outcome(
        "no single-mode squeezing at weak coupling", worst >= 1 - 1e-9, value=float(worst), threshold=1 - 1e-9
    )


# ==== weak-interaction oracle ====
def oracle_errors(epsilon: float) -> Dict[str, Tuple[float, float]]:
    """
    Label -> (absolute, relative) difference between the full model and the weak-coupling squeeze variances at the
    working point with every coupling scaled by *epsilon*. The relative error is taken on the deviation from the
    vacuum value; labels the oracle leaves at vacuum are measured against the largest deviation of any label.
    """
    point = working_point(length=ORACLE_LENGTH)
    point = point.copy(update={"config": point.config.scaled(epsilon)})
    state = run_pipeline(point)
    expected = weak_squeeze(weak_integrals(point.config, state.profile))
    deviations = {label: abs(value - len(parse_modes(label))) for label, value in expected.items()}
    scale = max(deviations.values())
    errors = {}
    for label, value in expected.items():
        absolute = abs(squeeze(state.moments, label).lambda_ - value)
        errors[label] = (absolute, absolute / (deviations[label] or scale))
    return errors


def check_oracle(_):
    errors = oracle_errors(ORACLE_EPSILON)
    halved = oracle_errors(ORACLE_EPSILON / 2)
    failed = []
    for label, (absolute, relative) in errors.items():
        if absolute <= ORACLE_ATOL:
            continue
        half_absolute, half_relative = halved[label]
        ratio = relative / half_relative if half_absolute > ORACLE_ATOL else float("inf")
        if relative > ORACLE_RTOL or ratio < ORACLE_MIN_RATIO:
            failed.append(f"{label}: {relative:.2e} (ratio {ratio:.2f})")
    worst = max(relative for _, relative in errors.values())
    if failed:
        summary = f"failing {', '.join(failed)}"
    else:
        summary = f"relative error falls by >= {ORACLE_MIN_RATIO} on halving"
    return _outcome(
        "weak-coupling formulas match the full model",
        not failed,
        value=worst,
        threshold=ORACLE_RTOL,
        detail=f"{len(errors)} labels at coupling scale {ORACLE_EPSILON:g}; {summary}",
    )


# ==== sweeps ====
def check_determinism(_):
    spec = SweepSpec(
        name="determinism",
        config=WaveguideConfig(L=0.2, K_s=5, K_i=5, K_F=5e-2, K_B=5e-2),
        boundary=ClassicalBoundary(A_sF0=0.1, A_iF0=0.1, A_pF0=10),
        inputs={"sF": InputModeState(xi=1.0)},
        observables=["lambda:sF,iF", "fano_mc:sF"],
        solver={"classical": "analytic", "steps": 100, "mc_samples": 2000},
        sweep=[{"name": "A_pF", "start": 1, "stop": 10, "steps": 3}],
        seed=7,
    )
    first = sweep_csv_text(run_sweep(spec, workers=1))
    second = sweep_csv_text(run_sweep(spec, workers=1))
    return _outcome("sweeps are reproducible", first == second)


def check_figure_landmarks(_):
    outcomes = [o for preset in list_presets() for o in check_landmarks(preset)]
    failed = [o for o in outcomes if not o["passed"]]
    detail = "; ".join(
        f"figure {o['figure']} {o['observable']} at {o['at']}: {o['value']} (expected {o['expected']})"
        for o in failed
    )
    return _outcome(
        "figure landmarks",
        not failed,
        value=len(outcomes) - len(failed),
        threshold=len(outcomes),
        detail=detail or None,
    )


CHECKS = (
    (check_units, LEVELS),
    (check_identity, LEVELS),
    (check_conservation, LEVELS),
    (check_symmetry, LEVELS),
    (check_commutator, LEVELS),
    (check_mutation, LEVELS),
    (check_convergence, LEVELS),
    (check_composition, LEVELS),
    (check_monte_carlo, LEVELS),
    (check_weak_bound, LEVELS),
    (check_oracle, LEVELS),
    (check_determinism, LEVELS),
    (check_figure_landmarks, ("full",)),
)


def run_checks(level: str = "fast", seed: int = None) -> dict:
    """
    Runs the self-checks of *level* and returns ``{"level", "passed", "elapsed_s", "checks": [...]}``; each check
    reports ``name``, ``passed``, ``value``, ``threshold`` and ``detail``. A check that raises is reported as failed.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown check level {level!r}, expected one of {', '.join(LEVELS)}")
    if seed is None:
        seed = settings.CHECK_SEED
    start = time.perf_counter()
    point = working_point()
    context = {
        "level": level,
        "point": point,
        "rng": np.random.Generator(np.random.Philox(np.random.SeedSequence(seed))),
    }

    outcomes = []
    for check, levels in CHECKS:
        if level not in levels:
            continue
        try:
            outcome = check(context)
        except SimulationException as e:
            outcome = _outcome(check.__name__, False, detail=f"{type(e).__name__}: {e}")
        log.info(f"check {outcome['name']!r}: {'ok' if outcome['passed'] else 'FAILED'}")
        outcomes.append(outcome)

    return {
        "level": level,
        "passed": all(o["passed"] for o in outcomes),
        "elapsed_s": time.perf_counter() - start,
        "checks": outcomes,
    }
