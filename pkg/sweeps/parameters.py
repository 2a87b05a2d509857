"""
Names that a sweep may vary, and how each one changes a point.

Setters act on the plain-dict form of a point (``{"config": ..., "boundary": ..., "inputs": ...}``) so that the
result is validated again when the point is rebuilt.
"""

import cmath
import math
import re

from sweeps.errors import InvalidSweep
from waveguide.modes import MODES, ModeId

__all__ = ("PARAMETERS", "resolve_parameter", "apply_assignments", "parameter_names")

CONFIG_FIELDS = ("L", "K_s", "K_i", "K_F", "K_B", "delta_s", "delta_i", "delta_F", "delta_B")
TIED = {
    "K_nl": ("K_F", "K_B"),
    "K_l": ("K_s", "K_i"),
    "delta_nl": ("delta_F", "delta_B"),
}
BOUNDARY = {"A_sF": "A_sF0", "A_iF": "A_iF0", "A_pF": "A_pF0"}
MODE_PARAMETER = re.compile(r"^(xi|phi|r|theta|n_ch)_(\w\w)$")

# phases are applied after moduli so that a 2D sweep of xi_m and phi_m commutes
_PRIORITY = {"phi": 1}


def _config_setter(*fields):
    def setter(point, value):
        for field in fields:
            point["config"][field] = value

    return setter


def _boundary_setter(field):
    def setter(point, value):
        point["boundary"][field] = value

    return setter


def _mode_setter(kind, mode: ModeId):
    def setter(point, value):
        state = point["inputs"].setdefault(mode, {})
        if not isinstance(state, dict):
            state = point["inputs"][mode] = dict(state)
        if kind == "xi":
            state["xi"] = complex(value)
        elif kind == "phi":
            modulus = abs(complex(state.get("xi", 0)))
            state["xi"] = cmath.rect(modulus, math.pi * value)
        else:
            state[kind] = value

    return setter


def _build():
    table = {}
    for field in CONFIG_FIELDS:
        table[field] = _config_setter(field)
    for alias, fields in TIED.items():
        table[alias] = _config_setter(*fields)
    for alias, field in BOUNDARY.items():
        table[alias] = _boundary_setter(field)
    for mode in MODES:
        for kind in ("xi", "phi", "r", "theta", "n_ch"):
            table[f"{kind}_{mode}"] = _mode_setter(kind, mode)
    return table


PARAMETERS = _build()


def parameter_names():
    return sorted(PARAMETERS)


def resolve_parameter(name: str):
    """
    Returns the setter for a sweepable parameter.

    Besides the configuration fields: ``K_nl`` (K_F = K_B), ``K_l`` (K_s = K_i), ``delta_nl`` (delta_F = delta_B),
    ``A_sF``/``A_iF``/``A_pF`` (incident classical amplitudes), and per mode ``xi_<mode>`` (real coherent
    amplitude), ``phi_<mode>`` (phase of xi in units of pi, modulus kept), ``r_<mode>``, ``theta_<mode>``,
    ``n_ch_<mode>``.
    """
    try:
        return PARAMETERS[name]
    except KeyError:
        match = MODE_PARAMETER.match(name)
        if match:
            raise InvalidSweep(f"unknown mode in parameter {name!r}, expected one of {', '.join(map(str, MODES))}")
        raise InvalidSweep(f"unknown sweep parameter {name!r}")


def _priority(name):
    match = MODE_PARAMETER.match(name)
    return _PRIORITY.get(match.group(1), 0) if match else 0


def apply_assignments(point: dict, assignments: dict) -> dict:
    """Applies ``{name: value}`` to a plain-dict point in place and returns it."""
    for name in sorted(assignments, key=_priority):
        resolve_parameter(name)(point, assignments[name])
    return point
