from flask import Blueprint, request

from lib.utils import error, success
from sweeps.checks import LEVELS, run_checks

checks = Blueprint("checks", __name__)


# ==== routes ====
@checks.route("/", methods=["GET"])
def check_report():
    level = request.args.get("level", "fast")
    if level not in LEVELS:
        return error(400, f"level must be one of {', '.join(LEVELS)}")
    seed = request.args.get("seed", type=int)
    return success(run_checks(level, seed))
