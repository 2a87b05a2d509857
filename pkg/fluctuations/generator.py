"""
Generator of the linearized equations for the operator corrections.

Stacked-vector layout (12 components), one (operator, conjugate) pair per mode in canonical order::

    0 sF   1 sF+   2 iF   3 iF+   4 pF   5 pF+
    6 sB   7 sB+   8 iB   9 iB+  10 pB  11 pB+

Forward components occupy rows/columns 0-5, backward components 6-11.
"""

import dataclasses

import numpy as np

from waveguide.couplings import coupling_rates
from waveguide.model import WaveguideConfig

__all__ = (
    "CoefficientFrame",
    "coefficient_frame",
    "generator_matrix",
    "coefficient_matrix",
    "FORWARD_SLOTS",
    "BACKWARD_SLOTS",
)

S_F, S_F_D, I_F, I_F_D, P_F, P_F_D, S_B, S_B_D, I_B, I_B_D, P_B, P_B_D = range(12)
FORWARD_SLOTS = np.arange(0, 6)
BACKWARD_SLOTS = np.arange(6, 12)


@dataclasses.dataclass(frozen=True)
class CoefficientFrame:
    """Couplings and classical amplitudes at one position *z*."""

    z: float
    K_s: complex
    K_i: complex
    K_F: complex
    K_B: complex
    amplitudes: np.ndarray  # sF, iF, pF, sB, iB, pB


def coefficient_frame(config: WaveguideConfig, z: float, amplitudes) -> CoefficientFrame:
    ks, ki, kf, kb = coupling_rates(config, z)
    return CoefficientFrame(
        z=float(z),
        K_s=complex(ks),
        K_i=complex(ki),
        K_F=complex(kf),
        K_B=complex(kb),
        amplitudes=np.asarray(amplitudes, dtype=complex),
    )


def generator_matrix(frame: CoefficientFrame) -> np.ndarray:
    """
    The 12x12 matrix G with d/dz (stacked corrections) = G (stacked corrections).

    Only the operator rows are transcribed; each conjugate row is the conjugate pattern of its partner.
    """
    ks, ki, kf, kb = frame.K_s, frame.K_i, frame.K_F, frame.K_B
    a_sf, a_if, a_pf, a_sb, a_ib, a_pb = frame.amplitudes
    g = np.zeros((12, 12), dtype=complex)

    # d sF = Ks sB + KF [A_pF iF+ + A_iF* pF]
    g[S_F, S_B] = ks
    g[S_F, I_F_D] = kf * a_pf
    g[S_F, P_F] = kf * np.conj(a_if)
    # d iF = Ki iB + KF [A_pF sF+ + A_sF* pF]
    g[I_F, I_B] = ki
    g[I_F, S_F_D] = kf * a_pf
    g[I_F, P_F] = kf * np.conj(a_sf)
    # d sB = Ks* sF - KB [A_pB iB+ + A_iB* pB]
    g[S_B, S_F] = np.conj(ks)
    g[S_B, I_B_D] = -kb * a_pb
    g[S_B, P_B] = -kb * np.conj(a_ib)
    # d iB = Ki* iF - KB [A_pB sB+ + A_sB* pB]
    g[I_B, I_F] = np.conj(ki)
    g[I_B, S_B_D] = -kb * a_pb
    g[I_B, P_B] = -kb * np.conj(a_sb)
    # d pF = -KF* [A_sF iF + A_iF sF]
    g[P_F, I_F] = -np.conj(kf) * a_sf
    g[P_F, S_F] = -np.conj(kf) * a_if
    # d pB = KB* [A_sB iB + A_iB sB]
    g[P_B, I_B] = np.conj(kb) * a_sb
    g[P_B, S_B] = np.conj(kb) * a_ib

    g[1::2, 1::2] = np.conj(g[0::2, 0::2])
    g[1::2, 0::2] = np.conj(g[0::2, 1::2])
    return g


def coefficient_matrix(config: WaveguideConfig, profile, z: float) -> np.ndarray:
    """Generator at *z* with the classical amplitudes taken from *profile*."""
    return generator_matrix(coefficient_frame(config, z, profile(z)))
