import dataclasses

import numpy as np
from flask import Blueprint
from pydantic import ValidationError, conint

from classical import conservation_residual
from fluctuations import bosonic_residual
from lib.utils import error, expect_json, success
from lib.validation import parse_validation_error
from oracle import weak_integrals, weak_intensity_variance, weak_squeeze
from quantumstats import squeezing_table
from sweeps import PointSpec, evaluate_point
from sweeps.pipeline import run_pipeline, solve_profile
from waveguide.modes import MODES

observables = Blueprint("observables", __name__)


class ProfileRequest(PointSpec):
    points: conint(ge=2, le=10001) = 201


# ==== routes ====
@observables.route("/", methods=["POST"])
@expect_json
def point_values(body):
    """Observable values at one point, with the precision diagnostics of its run."""
    try:
        point = PointSpec.parse_obj(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))

    result = evaluate_point(point)
    return success(dataclasses.asdict(result))


@observables.route("/table", methods=["POST"])
@expect_json
def point_table(body):
    """Squeezing reports of every mode and pair, and the output mean amplitudes."""
    try:
        point = PointSpec.parse_obj(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))

    state = run_pipeline(point)
    data = {
        "squeezing": {label: report.as_dict() for label, report in squeezing_table(state.moments).items()},
        "means": {str(mode): state.moments.mean(mode) for mode in MODES},
        "commutator_residual": state.commutator_residual,
        "commutator_normalized": state.commutator_normalized,
        "bosonic_residual": bosonic_residual(state.iomap.bogoliubov()),
    }
    return success(data)


@observables.route("/profile", methods=["POST"])
@expect_json
def classical_profile(body):
    """The classical amplitudes sampled on a uniform grid."""
    try:
        req = ProfileRequest.parse_obj(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))

    profile = solve_profile(req)
    z = np.linspace(0.0, req.config.L, req.points)
    amplitudes = profile(z)
    data = {
        "provenance": profile.provenance,
        "z": z,
        "amplitudes": {str(mode): amplitudes[mode.position] for mode in MODES},
        "conservation_residual": conservation_residual(profile),
    }
    return success(data)


@observables.route("/weak", methods=["POST"])
@expect_json
def weak_values(body):
    """Closed-form weak-coupling squeeze variances and intensity variances."""
    try:
        point = PointSpec.parse_obj(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))

    integrals = weak_integrals(point.config, solve_profile(point))
    data = {
        "integrals": dataclasses.asdict(integrals),
        "lambda": weak_squeeze(integrals),
        "var_W": weak_intensity_variance(integrals, point.inputs),
    }
    return success(data)
