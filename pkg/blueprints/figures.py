from typing import List, Literal, Optional

from flask import Blueprint, request
from pydantic import BaseModel, ValidationError, confloat, conint

import config
from lib.utils import error, success
from lib.validation import parse_validation_error
from sweeps import figure_sweeps, list_presets, load_preset, run_sweep

figures = Blueprint("figures", __name__)


class FigureRunOptions(BaseModel):
    steps: Optional[conint(ge=100)] = None
    tol: Optional[confloat(gt=0)] = None
    classical: Optional[Literal["analytic", "shooting"]] = None
    panels: Optional[List[str]] = None

    class Config:
        extra = "forbid"


# ==== routes ====
@figures.route("/", methods=["GET"])
def figure_list():
    data = [
        {"figure": p.figure, "caption": p.caption, "panels": [panel.name for panel in p.panels]}
        for p in list_presets()
    ]
    return success(data)


@figures.route("/<int:figure>", methods=["GET"])
def get_figure(figure):
    preset = load_preset(figure)
    return success(preset.dict())


@figures.route("/<int:figure>/run", methods=["POST"])
def run_figure(figure):
    """Runs the panels of a preset (all, or those named in ``panels``) and returns the rows as JSON."""
    body = request.get_json(silent=True) or {}
    try:
        options = FigureRunOptions.parse_obj(body)
    except ValidationError as e:
        return error(400, parse_validation_error(e))

    preset = load_preset(figure)
    sweeps = [
        (panel, spec)
        for panel, spec in figure_sweeps(preset, options.steps, options.tol, options.classical)
        if options.panels is None or panel.name in options.panels
    ]
    if not sweeps:
        return error(404, f"figure {figure} has none of the panels {options.panels}")
    size = sum(spec.size for _, spec in sweeps)
    if size > config.API_MAX_POINTS:
        return error(400, f"{size} points exceed the limit of {config.API_MAX_POINTS}; use the command line")

    data = {}
    for panel, spec in sweeps:
        result = run_sweep(spec, workers=1)
        data[panel.name] = {"name": spec.name, "columns": result.columns, "rows": result.records()}
    return success(data)
