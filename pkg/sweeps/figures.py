import json
import logging
import os
import pathlib
from typing import Dict, List

import config as settings
from sweeps.csvio import write_sweep_csv
from sweeps.errors import InvalidSweep, UnknownFigure
from sweeps.pipeline import evaluate_point
from sweeps.plotscript import plot_script
from sweeps.runner import SweepResult, run_sweep
from sweeps.spec import FigurePreset, parse_observable

__all__ = ("FIGURES", "preset_path", "load_preset", "list_presets", "figure_sweeps", "run_figure", "check_landmarks")

log = logging.getLogger(__name__)

FIGURES = range(1, 17)


def preset_path(figure: int, preset_dir: str = None) -> pathlib.Path:
    return pathlib.Path(preset_dir or settings.PRESET_DIR) / f"figure-{figure:02d}.json"


def load_preset(figure, preset_dir: str = None) -> FigurePreset:
    try:
        figure = int(figure)
    except (TypeError, ValueError):
        raise UnknownFigure(figure)
    if figure not in FIGURES:
        raise UnknownFigure(figure)
    path = preset_path(figure, preset_dir)
    if not path.exists():
        raise UnknownFigure(figure)
    with open(path) as f:
        preset = FigurePreset.parse_obj(json.load(f))
    if preset.figure != figure:
        raise InvalidSweep(f"{path.name} declares figure {preset.figure}")
    return preset


def list_presets(preset_dir: str = None) -> List[FigurePreset]:
    return [load_preset(figure, preset_dir) for figure in FIGURES if preset_path(figure, preset_dir).exists()]


def figure_sweeps(preset: FigurePreset, steps: int = None, tol: float = None, classical: str = None):
    """The panel sweeps of *preset* with optional solver overrides."""
    overrides = {}
    if steps is not None:
        overrides["steps"] = steps
    if tol is not None:
        overrides["commutator_tolerance"] = tol
    if classical is not None:
        overrides["classical"] = classical
    for panel in preset.panels:
        spec = preset.panel_sweep(panel)
        if overrides:
            spec = spec.copy(update={"solver": spec.solver.copy(update=overrides)})
            spec = spec.parse_obj(spec.dict())
        yield panel, spec


def run_figure(
    figure,
    out_dir: str = None,
    steps: int = None,
    tol: float = None,
    plot: bool = True,
    classical: str = None,
    workers: int = None,
) -> Dict[str, SweepResult]:
    """
    Runs every panel of a figure preset. With *out_dir*, writes ``figure-NN-<panel>.csv`` per panel and, with
    *plot*, a matching ``.py`` plot script.
    """
    preset = load_preset(figure)
    log.info(f"figure {preset.figure}: {preset.caption}")
    results = {}
    for panel, spec in figure_sweeps(preset, steps, tol, classical):
        result = run_sweep(spec, workers)
        results[panel.name] = result
        if out_dir is None:
            continue
        os.makedirs(out_dir, exist_ok=True)
        csv_name = f"{spec.name}.csv"
        with open(os.path.join(out_dir, csv_name), "w", encoding="utf-8", newline="") as f:
            write_sweep_csv(result, f)
        log.info(f"wrote {os.path.join(out_dir, csv_name)}")
        if plot:
            script = plot_script(csv_name, result.parameter_columns, result.observable_columns)
            with open(os.path.join(out_dir, f"{spec.name}.py"), "w", encoding="utf-8") as f:
                f.write(script)
    return results


def check_landmarks(preset: FigurePreset, classical: str = None) -> List[dict]:
    """Evaluates the landmark points of *preset*; one outcome dict per landmark."""
    outcomes = []
    for landmark in preset.landmarks:
        panel = preset.panel(landmark.panel)
        point = preset.base.with_assignments({**panel.fixed, **landmark.at})
        observable = parse_observable(landmark.observable)
        update = {"observables": [landmark.observable]}
        if classical is not None:
            update["solver"] = point.solver.copy(update={"classical": classical})
        point = point.copy(update=update)
        result = evaluate_point(point)
        value = result.values.get(observable.column)
        passed = isinstance(value, float) and abs(value - landmark.expected) <= landmark.tolerance
        outcomes.append(
            {
                "figure": preset.figure,
                "panel": landmark.panel,
                "observable": landmark.observable,
                "at": landmark.at,
                "expected": landmark.expected,
                "tolerance": landmark.tolerance,
                "value": value,
                "passed": passed,
                "note": landmark.note,
            }
        )
    return outcomes
