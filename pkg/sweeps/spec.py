"""
Sweep and figure-preset documents (JSON, ``schema_version`` 1).
"""

import math
from typing import Dict, List, Literal, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, confloat, conint, conlist, validator

from sweeps.errors import InvalidSweep
from sweeps.parameters import apply_assignments, resolve_parameter
from waveguide.model import ClassicalBoundary, InputModeState, WaveguideConfig
from waveguide.modes import ModeId, modes_label, parse_modes

__all__ = (
    "OBSERVABLES",
    "Observable",
    "parse_observable",
    "SolverOptions",
    "PointSpec",
    "SweptParameter",
    "SweepSpec",
    "Panel",
    "Landmark",
    "FigurePreset",
)

OBSERVABLES = ("lambda", "var_q", "var_p", "mean_W", "var_W", "fano", "R_W", "R_W_in", "fano_mc", "R_W_mc")


class Observable(NamedTuple):
    name: str
    modes: Tuple[ModeId, ...]

    @property
    def column(self) -> str:
        return f"{self.name}[{'+'.join(m.value for m in self.modes)}]"

    def __str__(self):
        return f"{self.name}:{modes_label(self.modes)}"


def parse_observable(text: str) -> Observable:
    """Parses ``"<observable>:<mode>[,<mode>]"``, e.g. ``"lambda:sF,iF"`` or ``"fano:sB"``."""
    name, sep, modes = text.partition(":")
    if not sep:
        raise ValueError(f"observable {text!r} must look like 'lambda:sF,iF'")
    if name not in OBSERVABLES:
        raise ValueError(f"unknown observable {name!r}, expected one of {', '.join(OBSERVABLES)}")
    return Observable(name, parse_modes(modes))


class _Document(BaseModel):
    class Config:
        extra = "forbid"
        json_encoders = {complex: lambda c: [c.real, c.imag]}


class SolverOptions(_Document):
    classical: Literal["analytic", "shooting"] = "shooting"
    steps: Optional[conint(ge=100)] = None
    steps_per_mm: Optional[conint(ge=1)] = None
    shooting_tolerance: Optional[confloat(gt=0)] = None
    commutator_tolerance: Optional[confloat(gt=0)] = None
    cond_threshold: Optional[confloat(gt=1)] = None
    mc_samples: Optional[conint(ge=1)] = None


class PointSpec(_Document):
    """One parameter point: structure, incident light and what to compute there."""

    config: WaveguideConfig
    boundary: ClassicalBoundary = ClassicalBoundary()
    inputs: Dict[ModeId, InputModeState] = {}
    observables: List[str] = []
    solver: SolverOptions = SolverOptions()
    seed: int = 0

    @validator("observables", each_item=True)
    def valid_observable(cls, v):
        parse_observable(v)
        return v

    @property
    def parsed_observables(self) -> List[Observable]:
        return [parse_observable(o) for o in self.observables]

    def with_assignments(self, assignments: dict) -> "PointSpec":
        """A copy with sweep parameters applied (see :mod:`sweeps.parameters`)."""
        data = {
            "config": self.config.dict(),
            "boundary": self.boundary.dict(),
            "inputs": {mode: state.dict() for mode, state in self.inputs.items()},
            "observables": list(self.observables),
            "solver": self.solver.dict(),
            "seed": self.seed,
        }
        return PointSpec.parse_obj(apply_assignments(data, assignments))


class SweptParameter(_Document):
    name: str
    start: float
    stop: float
    steps: conint(ge=2)
    scale: Literal["linear", "log"] = "linear"

    @validator("name")
    def known_parameter(cls, v):
        try:
            resolve_parameter(v)
        except InvalidSweep as e:
            raise ValueError(str(e))
        return v

    @validator("scale")
    def log_scale_positive(cls, v, values):
        if v == "log" and not (values.get("start", 0) > 0 and values.get("stop", 0) > 0):
            raise ValueError("log scale needs positive start and stop")
        return v

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.steps)
        return np.linspace(self.start, self.stop, self.steps)


class SweepSpec(PointSpec):
    schema_version: Literal[1] = 1
    name: str = "sweep"
    sweep: conlist(SweptParameter, min_items=1, max_items=2)

    @validator("sweep")
    def distinct_parameters(cls, v):
        names = [p.name for p in v]
        if len(set(names)) != len(names):
            raise ValueError("swept parameters must be distinct")
        return v

    @validator("observables")
    def at_least_one_observable(cls, v):
        if not v:
            raise ValueError("at least one observable is required")
        return v

    @property
    def size(self) -> int:
        """Number of grid points."""
        return math.prod(p.steps for p in self.sweep)

    def base_point(self) -> PointSpec:
        return PointSpec.parse_obj(self.dict(include=set(PointSpec.__fields__)))


# ==== figure presets ====
class Panel(_Document):
    name: str
    sweep: conlist(SweptParameter, min_items=1, max_items=2)
    observables: conlist(str, min_items=1)
    fixed: Dict[str, float] = {}

    @validator("observables", each_item=True)
    def valid_observable(cls, v):
        parse_observable(v)
        return v

    @validator("fixed")
    def known_fixed_parameters(cls, v):
        for name in v:
            try:
                resolve_parameter(name)
            except InvalidSweep as e:
                raise ValueError(str(e))
        return v


class Landmark(_Document):
    """An expected value of one observable at one parameter point of a panel."""

    panel: str
    observable: str
    at: Dict[str, float] = {}
    expected: float
    tolerance: confloat(gt=0)
    note: str = ""

    @validator("observable")
    def valid_observable(cls, v):
        parse_observable(v)
        return v


class FigurePreset(_Document):
    schema_version: Literal[1] = 1
    figure: conint(ge=1, le=16)
    caption: str
    base: PointSpec
    panels: conlist(Panel, min_items=1)
    landmarks: List[Landmark] = []

    def panel(self, name: str) -> Panel:
        for panel in self.panels:
            if panel.name == name:
                return panel
        raise InvalidSweep(f"figure {self.figure} has no panel {name!r}")

    def panel_sweep(self, panel: Panel) -> SweepSpec:
        base = self.base.with_assignments(panel.fixed)
        data = base.dict()
        data.update(
            name=f"figure-{self.figure:02d}-{panel.name}",
            sweep=[p.dict() for p in panel.sweep],
            observables=list(panel.observables),
        )
        return SweepSpec.parse_obj(data)
