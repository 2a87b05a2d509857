"""
First and second moments of the six output corrections for Gaussian inputs.

All second moments are normally ordered: B_j = <dA_j^+ dA_j>, C_j = <dA_j^2>, D_jk = <dA_j dA_k> and
Dbar_jk = -<dA_j^+ dA_k> (j != k).
"""

import dataclasses
from typing import Dict, Union

import numpy as np

from fluctuations.iomap import BogoliubovMap, InputOutputMap
from waveguide.model import InputModeState, antinormal_from_state, complete_inputs, normal_from_antinormal
from waveguide.modes import MODES, ModeId

__all__ = ("GaussianMoments", "propagate_means", "propagate_second_moments", "input_moments", "input_means")


@dataclasses.dataclass(frozen=True)
class GaussianMoments:
    means: np.ndarray  # (6,) complex
    B: np.ndarray  # (6,) real
    C: np.ndarray  # (6,) complex
    D: np.ndarray  # (6, 6), zero diagonal
    Dbar: np.ndarray  # (6, 6), zero diagonal

    def mean(self, mode: ModeId) -> complex:
        return complex(self.means[ModeId.parse(mode).position])

    def normal_matrix(self) -> np.ndarray:
        """N_jk = <dA_j^+ dA_k> including the diagonal."""
        return np.diag(self.B).astype(complex) - self.Dbar

    def anomalous_matrix(self) -> np.ndarray:
        """M_jk = <dA_j dA_k> including the diagonal."""
        return np.diag(self.C) + self.D

    @classmethod
    def from_matrices(cls, means, n: np.ndarray, m: np.ndarray) -> "GaussianMoments":
        off = ~np.eye(len(n), dtype=bool)
        return cls(
            means=np.asarray(means, dtype=complex),
            B=np.real(np.diag(n)).copy(),
            C=np.diag(m).copy(),
            D=np.where(off, m, 0),
            Dbar=np.where(off, -n, 0),
        )


def _as_bogoliubov(mapping: Union[InputOutputMap, BogoliubovMap]) -> BogoliubovMap:
    if isinstance(mapping, InputOutputMap):
        return mapping.bogoliubov()
    return mapping


def input_means(inputs: Dict) -> np.ndarray:
    inputs = complete_inputs(inputs)
    return np.array([inputs[mode].xi for mode in MODES], dtype=complex)


def propagate_means(mapping, means) -> np.ndarray:
    """xi_out = U xi_in + V xi_in^*. *means* is a length-6 vector or a mapping of input states."""
    bmap = _as_bogoliubov(mapping)
    if isinstance(means, dict):
        means = input_means(means)
    means = np.asarray(means, dtype=complex)
    return bmap.U @ means + bmap.V @ np.conj(means)


def _input_normal_moments(inputs: Dict[ModeId, InputModeState]):
    b, c = np.empty(6), np.empty(6, dtype=complex)
    for mode in MODES:
        moment = normal_from_antinormal(antinormal_from_state(inputs[mode]))
        b[mode.position] = moment.B
        c[mode.position] = moment.C
    return b, c


def input_moments(inputs: Dict) -> GaussianMoments:
    """Moments of the incident light itself (independent modes, no cross correlations)."""
    inputs = complete_inputs(inputs)
    b, c = _input_normal_moments(inputs)
    zeros = np.zeros((6, 6), dtype=complex)
    return GaussianMoments(means=input_means(inputs), B=b, C=c, D=zeros, Dbar=zeros.copy())


def propagate_second_moments(mapping, inputs: Dict) -> GaussianMoments:
    """
    Output moments under dA_out = U dA_in + V dA_in^+ for mutually independent input modes.

    With Bn = diag(B_in), Cn = diag(C_in) (normally ordered):

        N = U* Bn U^T + V* (Bn + 1) V^T + U* Cn* V^T + V* Cn U^T
        M = U Cn U^T + V Cn* V^T + U (Bn + 1) V^T + V Bn U^T
    """
    bmap = _as_bogoliubov(mapping)
    inputs = complete_inputs(inputs)
    b, c = _input_normal_moments(inputs)
    u, v = bmap.U, bmap.V
    bn, bn1 = np.diag(b), np.diag(b + 1)
    cn = np.diag(c)
    n = u.conj() @ bn @ u.T + v.conj() @ bn1 @ v.T + u.conj() @ cn.conj() @ v.T + v.conj() @ cn @ u.T
    m = u @ cn @ u.T + v @ cn.conj() @ v.T + u @ bn1 @ v.T + v @ bn @ u.T
    means = propagate_means(bmap, input_means(inputs))
    return GaussianMoments.from_matrices(means, n, m)
