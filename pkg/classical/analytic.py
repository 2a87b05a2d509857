"""
Closed-form classical solution for strong linear coupling.

Signal and idler obey the linear distributed-feedback equations exactly; the pump is obtained to first order
in the nonlinear coupling by integrating the source terms built from the signal/idler solution.
"""

import cmath
import dataclasses
import logging
from typing import Optional

import numpy as np

import config as settings
from classical.errors import DegenerateBoundary
from classical.profile import ClassicalFieldProfile
from waveguide.integrate import step_count
from waveguide.model import ClassicalBoundary, WaveguideConfig

__all__ = (
    "ClassicalSolutionConstants",
    "AnalyticProfile",
    "solve_signal_idler_linear",
    "solve_pump_perturbative",
    "solve_classical_analytic",
    "pump_terms",
)

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class ClassicalSolutionConstants:
    """
    Integration constants of the analytic solution. The pump entries are None until
    :func:`solve_pump_perturbative` has run.
    """

    Delta_s: complex
    Delta_i: complex
    Cc_s: complex
    Cc_i: complex
    E_sF: complex
    F_sF: complex
    E_iF: complex
    F_iF: complex
    E_sB: complex
    F_sB: complex
    E_iB: complex
    F_iB: complex
    Delta_F: Optional[float] = None
    Delta_B: Optional[float] = None
    A_pB0: Optional[complex] = None

    @property
    def complete(self) -> bool:
        return self.A_pB0 is not None


# ==== signal / idler ====
def _field_constants(K: complex, delta: float, a0: complex, length: float):
    """
    Returns (Delta, Cc, E_F, F_F, E_B, F_B) for one field with A_F(0) = a0 and A_B(L) = 0.

    The forward and backward envelopes are
        A_F(z) = exp(-i delta z/2) (E_F exp(i Delta z) + F_F exp(-i Delta z))
        A_B(z) = exp(+i delta z/2) (E_B exp(i Delta z) + F_B exp(-i Delta z))
    """
    a0 = complex(a0)
    if abs(K) * length < settings.DECOUPLED_THRESHOLD:
        delta_ = abs(delta) / 2
        cc = 1j * a0 * np.sign(delta)
        return complex(delta_), complex(cc), (a0 - 1j * cc) / 2, (a0 + 1j * cc) / 2, 0j, 0j

    delta_ = cmath.sqrt(delta**2 / 4 - abs(K) ** 2)
    t = cmath.tan(delta_ * length)
    # cot form keeps the ratio finite when tan diverges
    if abs(t) <= 1:
        den = delta / 2 * t + 1j * delta_
        num = 1j * delta_ * t - delta / 2
    else:
        u = 1 / t
        den = delta / 2 + 1j * delta_ * u
        num = 1j * delta_ - delta / 2 * u
    if abs(den) <= settings.DEGENERACY_THRESHOLD * (abs(delta) / 2 + abs(delta_)):
        raise DegenerateBoundary(
            f"boundary conditions are dependent at K={K}, delta={delta}, L={length} (band edge, Delta={delta_})"
        )
    cc = a0 * num / den
    e_f = (a0 - 1j * cc) / 2
    f_f = (a0 + 1j * cc) / 2
    e_b = (2 * delta_ - delta) / (4 * K) * (a0 - 1j * cc)
    f_b = (2 * delta_ + delta) / (4 * K) * (-a0 - 1j * cc)
    return delta_, cc, e_f, f_f, e_b, f_b


def solve_signal_idler_linear(config: WaveguideConfig, boundary: ClassicalBoundary) -> ClassicalSolutionConstants:
    """
    Solves the linear signal and idler equations with A_aF(0) given and A_aB(L) = 0.

    The half-gap rate Delta_a is the principal square root of delta_a^2/4 - |K_a|^2, so inside the band gap it is
    imaginary and the same formulas describe the evanescent solution.

    :raises DegenerateBoundary: if the two boundary equations are dependent.
    """
    d_s, cc_s, e_sf, f_sf, e_sb, f_sb = _field_constants(config.K_s, config.delta_s, boundary.A_sF0, config.L)
    d_i, cc_i, e_if, f_if, e_ib, f_ib = _field_constants(config.K_i, config.delta_i, boundary.A_iF0, config.L)
    return ClassicalSolutionConstants(
        Delta_s=d_s,
        Delta_i=d_i,
        Cc_s=cc_s,
        Cc_i=cc_i,
        E_sF=e_sf,
        F_sF=f_sf,
        E_iF=e_if,
        F_iF=f_if,
        E_sB=e_sb,
        F_sB=f_sb,
        E_iB=e_ib,
        F_iB=f_ib,
    )


# ==== pump ====
def _phase_integral(d: complex, z, length: float):
    """(exp(-i d z) - 1) / (i d), replaced by its series near d = 0."""
    z = np.asarray(z, dtype=float)
    if abs(d) * length < settings.RESONANCE_THRESHOLD:
        return -z * (1 - 0.5j * d * z)
    return (np.exp(-1j * d * z) - 1) / (1j * d)


def pump_terms(config: WaveguideConfig, constants: ClassicalSolutionConstants, direction: str):
    """
    The four (coefficient, denominator) source terms of the forward ("F") or backward ("B") pump.

    A_pF(z) = A_pF(0) + sum coeff * phi(D, z), A_pB(z) = A_pB(0) - sum coeff * phi(D, z), with
    phi(D, z) = (exp(-i D z) - 1) / (i D).
    """
    c = constants
    if direction == "F":
        k, combined = config.K_F, config.delta_F + (config.delta_s + config.delta_i) / 2
        signal, idler = ((c.E_sF, 1), (c.F_sF, -1)), ((c.E_iF, 1), (c.F_iF, -1))
    elif direction == "B":
        k, combined = config.K_B, -config.delta_B - (config.delta_s + config.delta_i) / 2
        signal, idler = ((c.E_sB, 1), (c.F_sB, -1)), ((c.E_iB, 1), (c.F_iB, -1))
    else:
        raise ValueError(f"direction must be 'F' or 'B', got {direction!r}")

    terms = []
    for x, sigma_s in signal:
        for y, sigma_i in idler:
            coeff = 2 * np.conj(k) * x * y
            terms.append((complex(coeff), complex(combined - sigma_s * c.Delta_s - sigma_i * c.Delta_i)))
    return terms


def solve_pump_perturbative(
    config: WaveguideConfig, boundary: ClassicalBoundary, constants: ClassicalSolutionConstants
) -> ClassicalSolutionConstants:
    """Adds the combined mismatches and the backward pump amplitude at z=0 fixed by A_pB(L) = 0."""
    delta_f = config.delta_F + (config.delta_s + config.delta_i) / 2
    delta_b = -config.delta_B - (config.delta_s + config.delta_i) / 2
    a_pb0 = sum(
        coeff * complex(_phase_integral(d, config.L, config.L)) for coeff, d in pump_terms(config, constants, "B")
    )
    return dataclasses.replace(constants, Delta_F=delta_f, Delta_B=delta_b, A_pB0=complex(a_pb0))


# ==== profile ====
class AnalyticProfile(ClassicalFieldProfile):
    provenance = "analytic"

    def __init__(self, config, boundary, constants: ClassicalSolutionConstants, grid):
        if not constants.complete:
            raise ValueError("pump constants missing; run solve_pump_perturbative first")
        super().__init__(config, boundary, grid)
        self.constants = constants
        self._pump_f = pump_terms(config, constants, "F")
        self._pump_b = pump_terms(config, constants, "B")

    def __call__(self, z):
        c, cfg = self.constants, self.config
        z = np.asarray(z, dtype=float)
        s_f, s_b = self._envelopes(z, cfg.delta_s, c.Delta_s, c.E_sF, c.F_sF, c.E_sB, c.F_sB)
        i_f, i_b = self._envelopes(z, cfg.delta_i, c.Delta_i, c.E_iF, c.F_iF, c.E_iB, c.F_iB)
        p_f = self.boundary.A_pF0 + sum(coeff * _phase_integral(d, z, cfg.L) for coeff, d in self._pump_f)
        p_b = c.A_pB0 - sum(coeff * _phase_integral(d, z, cfg.L) for coeff, d in self._pump_b)
        return np.array([s_f, i_f, p_f * np.ones_like(s_f), s_b, i_b, p_b * np.ones_like(s_f)])

    @staticmethod
    def _envelopes(z, delta, delta_, e_f, f_f, e_b, f_b):
        up, down = np.exp(1j * delta_ * z), np.exp(-1j * delta_ * z)
        forward = np.exp(-0.5j * delta * z) * (e_f * up + f_f * down)
        backward = np.exp(0.5j * delta * z) * (e_b * up + f_b * down)
        return forward, backward


def solve_classical_analytic(
    config: WaveguideConfig, boundary: ClassicalBoundary, steps: int = None
) -> AnalyticProfile:
    """Both analytic stages chained; *steps* sets the diagnostic grid."""
    constants = solve_pump_perturbative(config, boundary, solve_signal_idler_linear(config, boundary))
    n = step_count(config.L, steps, strict=False)
    log.debug(f"analytic solution: Delta_s={constants.Delta_s:.6g}, Delta_i={constants.Delta_i:.6g}")
    return AnalyticProfile(config, boundary, constants, np.linspace(0.0, config.L, n + 1))
