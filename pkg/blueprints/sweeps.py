from flask import Blueprint, Response
from pydantic import ValidationError

import config
from lib.utils import error, expect_json, success
from lib.validation import parse_validation_error
from sweeps import SweepSpec, parameter_names, run_sweep, sweep_csv_text

sweeps = Blueprint("sweeps", __name__)


def _parse_spec(body):
    spec = SweepSpec.parse_obj(body)
    if spec.size > config.API_MAX_POINTS:
        raise ValueError(f"{spec.size} points exceed the limit of {config.API_MAX_POINTS}; use the command line")
    return spec


# ==== routes ====
@sweeps.route("/", methods=["POST"])
@expect_json
def run(body):
    try:
        spec = _parse_spec(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))
    except ValueError as e:
        return error(400, str(e))

    result = run_sweep(spec, workers=1)
    data = {
        "name": spec.name,
        "columns": result.columns,
        "rows": result.records(),
        "failed": len(result.failed),
    }
    return success(data)


@sweeps.route("/csv", methods=["POST"])
@expect_json
def run_csv(body):
    try:
        spec = _parse_spec(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))
    except ValueError as e:
        return error(400, str(e))

    result = run_sweep(spec, workers=1)
    return Response(sweep_csv_text(result), mimetype="text/csv")


@sweeps.route("/parameters", methods=["GET"])
def parameters():
    return success(parameter_names())
