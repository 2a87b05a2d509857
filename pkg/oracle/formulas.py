"""
Closed-form squeeze variances and intensity variances of the weak-interaction approximation, correct to
second order in the coupling constants for coherent (or vacuum) incident corrections.
"""

from typing import Dict

import numpy as np

from oracle.integrals import WeakIntegrals
from waveguide.model import InputModeState
from waveguide.modes import MODES, ModeId

__all__ = ("weak_squeeze", "weak_intensity_variance", "coherent_amplitudes")


def weak_squeeze(integrals: WeakIntegrals) -> Dict[str, float]:
    """Principal squeeze variances keyed by mode or pair label."""
    pf, pb = abs(integrals.I_pF) ** 2, abs(integrals.I_pB) ** 2
    out = {
        "sF": 1 + 2 * pf,
        "sB": 1 + 2 * pb,
        # s <-> i exchange leaves I_pF and I_pB unchanged
        "iF": 1 + 2 * pf,
        "iB": 1 + 2 * pb,
        "pF": 1.0,
        "pB": 1.0,
        "sF,sB": 2 * (1 + pf + pb),
        "sF,iF": 2 * (1 - 2 * abs(integrals.I_pF) + 2 * pf),
        "sF,iB": 2 * (1 + pf + pb - 2 * abs(integrals.I_i_pF - integrals.I_pB_s)),
        "sB,iB": 2 * (1 - 2 * abs(integrals.I_pB) + 2 * pb),
        "sF,pF": 2 * (1 + pf - 2 * abs(integrals.I_sF_pF)),
        "sF,pB": 2 * (1 + pf),
        "sB,pB": 2 * (1 + pb - 2 * abs(integrals.I_pB_sB)),
        "sB,pF": 2 * (1 + pb),
        "pF,pB": 2.0,
    }
    return {k: float(v) for k, v in out.items()}


def coherent_amplitudes(inputs) -> Dict[str, complex]:
    """Mode label -> coherent amplitude xi; accepts InputModeState values or bare numbers, missing modes are 0."""
    out = {mode.value: 0j for mode in MODES}
    for key, value in (inputs or {}).items():
        if isinstance(value, InputModeState):
            value = value.xi
        elif isinstance(value, dict):
            value = InputModeState.parse_obj(value).xi
        out[ModeId.parse(key).value] = complex(value)
    return out


def weak_intensity_variance(integrals: WeakIntegrals, xi) -> Dict[str, float]:
    """Normally ordered variances of integrated intensity keyed by mode or pair label."""
    x = coherent_amplitudes(xi)
    c = np.conj
    i_pf, i_pb, i_s, i_i = integrals.I_pF, integrals.I_pB, integrals.I_s, integrals.I_i
    pf, pb = abs(i_pf) ** 2, abs(i_pb) ** 2
    n = {k: abs(v) ** 2 for k, v in x.items()}

    out = {
        "sF": 2 * pf * n["sF"],
        "sB": 2 * pb * n["sB"],
        "iF": 2 * pf * n["iF"],
        "iB": 2 * pb * n["iB"],
        "sF,iF": (
            4 * np.real(i_pf * c(x["sF"]) * c(x["iF"]))
            + 2 * pf * (1 + 3 * n["sF"] + 3 * n["iF"])
            + 4 * np.real(i_pf * c(i_s) * c(x["sB"]) * c(x["iF"]) + i_pf * i_i * c(x["iB"]) * c(x["sF"]))
        ),
        "sF,sB": 2 * (pf * n["sF"] + pb * n["sB"]),
        "sF,iB": (
            2 * (pf * n["sF"] + pb * n["iB"])
            + 4 * np.real(-integrals.I_i_pF * c(x["sF"]) * c(x["iB"]) + integrals.I_pB_s * c(x["sF"]) * c(x["iB"]))
        ),
        "sB,iB": (
            4 * np.real(i_pb * c(x["sB"]) * c(x["iB"]))
            + 2 * pb * (1 + 3 * n["sB"] + 3 * n["iB"])
            + 4 * np.real(-i_pb * i_s * c(x["sF"]) * c(x["iB"]) - i_pb * c(i_i) * c(x["iF"]) * c(x["sB"]))
        ),
    }
    return {k: float(v) for k, v in out.items()}
