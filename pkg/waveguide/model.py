"""
Shared domain types: the waveguide configuration, classical boundary values and incident quantum states.

Amplitudes are in scaled units throughout: lengths in mm, classical amplitudes in 10^6 V/m, correction
amplitudes in 10 V/m (so |xi|^2 is a mean photon number). Couplings and mismatches are in 1/mm.
"""

import cmath
import dataclasses
import math
from typing import Dict

from pydantic import BaseModel, confloat, root_validator, validator

from waveguide.errors import UnphysicalState
from waveguide.modes import MODES, ModeId

__all__ = (
    "Complex",
    "WaveguideConfig",
    "ClassicalBoundary",
    "InputModeState",
    "MomentPair",
    "InputStates",
    "antinormal_from_state",
    "normal_from_antinormal",
    "complete_inputs",
)


class Complex(complex):
    """
    Pydantic field type for complex numbers.

    Accepts a number, a string such as ``"1+2j"``, a pair ``[re, im]`` or a mapping ``{"re": ..., "im": ...}``.
    """

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, v):
        if isinstance(v, bool):
            raise TypeError("expected a complex number")
        if isinstance(v, (int, float, complex)):
            value = complex(v)
        elif isinstance(v, str):
            try:
                value = complex(v.replace(" ", ""))
            except ValueError:
                raise ValueError(f"cannot parse {v!r} as a complex number")
        elif isinstance(v, (list, tuple)) and len(v) == 2:
            value = complex(float(v[0]), float(v[1]))
        elif isinstance(v, dict) and set(v) <= {"re", "im"}:
            value = complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
        else:
            raise TypeError("expected a complex number, [re, im] or {re, im}")
        if not cmath.isfinite(value):
            raise ValueError("must be finite")
        return cls(value)


def _encode_complex(c: complex):
    return [c.real, c.imag]


class _Frozen(BaseModel):
    class Config:
        allow_mutation = False
        extra = "forbid"
        json_encoders = {complex: _encode_complex}

    def replace(self, **update):
        """Returns a validated copy with some fields changed."""
        return self.__class__(**{**self.dict(), **update})


class WaveguideConfig(_Frozen):
    """Geometry, linear/nonlinear couplings and the four phase mismatches of the structure."""

    L: float
    K_s: Complex = Complex(0)
    K_i: Complex = Complex(0)
    K_F: Complex = Complex(0)
    K_B: Complex = Complex(0)
    delta_s: float = 0.0
    delta_i: float = 0.0
    delta_F: float = 0.0
    delta_B: float = 0.0

    @validator("L")
    def positive_length(cls, v):
        if not math.isfinite(v) or v <= 0:
            raise ValueError("length must be positive and finite")
        return v

    @validator("delta_s", "delta_i", "delta_F", "delta_B")
    def finite_mismatch(cls, v):
        if not math.isfinite(v):
            raise ValueError("must be finite")
        return v

    def scaled(self, factor: float) -> "WaveguideConfig":
        """Returns the configuration with every coupling constant multiplied by *factor*."""
        return self.replace(
            K_s=self.K_s * factor, K_i=self.K_i * factor, K_F=self.K_F * factor, K_B=self.K_B * factor
        )

    def swap_signal_idler(self) -> "WaveguideConfig":
        return self.replace(K_s=self.K_i, K_i=self.K_s, delta_s=self.delta_i, delta_i=self.delta_s)


class ClassicalBoundary(_Frozen):
    """Incident forward amplitudes at z=0. The backward fields vanish at z=L."""

    A_sF0: Complex = Complex(0)
    A_iF0: Complex = Complex(0)
    A_pF0: Complex = Complex(0)

    def swap_signal_idler(self) -> "ClassicalBoundary":
        return self.replace(A_sF0=self.A_iF0, A_iF0=self.A_sF0)


class InputModeState(_Frozen):
    """
    Incident state of one correction operator: coherent amplitude *xi*, squeeze parameter *r* with phase
    *theta* and a chaotic (thermal) component with mean photon number *n_ch*.
    """

    xi: Complex = Complex(0)
    r: confloat(ge=0) = 0.0
    theta: float = 0.0
    n_ch: confloat(ge=0) = 0.0

    @root_validator(skip_on_failure=True)
    def finite(cls, values):
        for key in ("r", "theta", "n_ch"):
            if not math.isfinite(values[key]):
                raise ValueError(f"{key} must be finite")
        return values


InputStates = Dict[ModeId, InputModeState]


@dataclasses.dataclass(frozen=True)
class MomentPair:
    """Second moments of one mode: B = <dA^+ dA> (or <dA dA^+> when antinormal) and C = <dA^2>."""

    B: float
    C: complex
    ordering: str = "normal"


def antinormal_from_state(state: InputModeState) -> MomentPair:
    b = math.cosh(state.r) ** 2 + state.n_ch
    c = 0.5 * cmath.exp(1j * state.theta) * math.sinh(2 * state.r)
    return MomentPair(B=b, C=c, ordering="antinormal")


def normal_from_antinormal(m: MomentPair) -> MomentPair:
    if m.ordering != "antinormal":
        raise ValueError("expected antinormally ordered moments")
    if m.B < 1:
        raise UnphysicalState(f"antinormal variance B_A = {m.B!r} is below 1")
    return MomentPair(B=m.B - 1, C=m.C, ordering="normal")


def complete_inputs(inputs: Dict = None) -> InputStates:
    """Fills in vacuum states for every mode missing from *inputs*."""
    inputs = inputs or {}
    out = {}
    for mode in MODES:
        state = inputs.get(mode, inputs.get(mode.value))
        if state is None:
            state = InputModeState()
        elif isinstance(state, dict):
            state = InputModeState.parse_obj(state)
        out[mode] = state
    return out
