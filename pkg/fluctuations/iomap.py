"""
Input-output rearrangement of the transfer matrix and the commutator identities used as a precision monitor.

Physical inputs are the forward corrections at z=0 and the backward corrections at z=L; physical outputs are the
forward corrections at z=L and the backward corrections at z=0. Both keep the interleaved stacked layout, so
slots 0-5 are forward and 6-11 backward in each.
"""

import dataclasses
import logging

import numpy as np

import config as settings
from fluctuations.errors import IllConditionedBackwardBlock
from fluctuations.generator import BACKWARD_SLOTS, FORWARD_SLOTS
from fluctuations.transfer import TransferMatrix

__all__ = (
    "InputOutputMap",
    "BogoliubovMap",
    "rearrange_input_output",
    "commutation_residual",
    "bosonic_residual",
    "transfer_blocks",
)

log = logging.getLogger(__name__)

# +1 for forward modes, -1 for backward modes (commutator sign of a spatially propagating field)
ETA = np.diag([1.0, 1.0, 1.0, -1.0, -1.0, -1.0])


@dataclasses.dataclass(frozen=True)
class BogoliubovMap:
    """a_out = U a_in + V a_in^+ for the six annihilation operators in canonical mode order."""

    U: np.ndarray
    V: np.ndarray


@dataclasses.dataclass(frozen=True)
class InputOutputMap:
    """
    The rearranged 12x12 map *T* from physical inputs to physical outputs together with the transfer matrix it
    came from.

    The transfer blocks ``u``/``v`` (6x6, canonical mode order, forward modes first) relate all annihilation
    operators at L to the annihilation and creation operators at 0; their 3x3 quarters are ``u11`` (F from F),
    ``u12`` (F from B), ``u21`` (B from F) and ``u22`` (B from B), likewise for ``v``.
    """

    T: np.ndarray
    transfer: TransferMatrix
    condition_number: float

    @property
    def T_FF(self):
        return self.T[np.ix_(FORWARD_SLOTS, FORWARD_SLOTS)]

    @property
    def T_FB(self):
        return self.T[np.ix_(FORWARD_SLOTS, BACKWARD_SLOTS)]

    @property
    def T_BF(self):
        return self.T[np.ix_(BACKWARD_SLOTS, FORWARD_SLOTS)]

    @property
    def T_BB(self):
        return self.T[np.ix_(BACKWARD_SLOTS, BACKWARD_SLOTS)]

    @property
    def u(self) -> np.ndarray:
        return self.transfer.M[0::2, 0::2]

    @property
    def v(self) -> np.ndarray:
        return self.transfer.M[0::2, 1::2]

    u11 = property(lambda self: self.u[:3, :3])
    u12 = property(lambda self: self.u[:3, 3:])
    u21 = property(lambda self: self.u[3:, :3])
    u22 = property(lambda self: self.u[3:, 3:])
    v11 = property(lambda self: self.v[:3, :3])
    v12 = property(lambda self: self.v[:3, 3:])
    v21 = property(lambda self: self.v[3:, :3])
    v22 = property(lambda self: self.v[3:, 3:])

    def bogoliubov(self) -> BogoliubovMap:
        """Physical-output annihilation operators in terms of physical-input operators."""
        return BogoliubovMap(U=self.T[0::2, 0::2].copy(), V=self.T[0::2, 1::2].copy())

    @property
    def residual(self) -> float:
        return commutation_residual(self)

    @property
    def normalized_residual(self) -> float:
        return commutation_residual(self, normalized=True)


def transfer_blocks(m: np.ndarray):
    """(U_FF, U_FB, U_BF, U_BB) of a 12x12 transfer matrix."""
    f, b = FORWARD_SLOTS, BACKWARD_SLOTS
    return m[np.ix_(f, f)], m[np.ix_(f, b)], m[np.ix_(b, f)], m[np.ix_(b, b)]


def rearrange_input_output(transfer: TransferMatrix, cond_threshold: float = None) -> InputOutputMap:
    """
    Solves the transfer relation for the unknown backward outputs at z=0:

        [[U_FF - U_FB U_BB^-1 U_BF,  U_FB U_BB^-1],
         [-U_BB^-1 U_BF,             U_BB^-1     ]]

    :raises IllConditionedBackwardBlock: if cond(U_BB) exceeds *cond_threshold* (default ``COND_THRESHOLD``)
    """
    if cond_threshold is None:
        cond_threshold = settings.COND_THRESHOLD
    u_ff, u_fb, u_bf, u_bb = transfer_blocks(transfer.M)
    cond = float(np.linalg.cond(u_bb))
    if not np.isfinite(cond) or cond > cond_threshold:
        raise IllConditionedBackwardBlock(cond, cond_threshold)
    u_bb_inv = np.linalg.solve(u_bb, np.eye(6))
    t = np.block([[u_ff - u_fb @ u_bb_inv @ u_bf, u_fb @ u_bb_inv], [-u_bb_inv @ u_bf, u_bb_inv]])
    log.debug(f"input-output map: cond(U_BB) = {cond:.3e}")
    return InputOutputMap(T=t, transfer=transfer, condition_number=cond)


def commutation_residual(iomap: InputOutputMap, normalized: bool = False) -> float:
    """
    Largest deviation from the commutator identities of the transfer blocks,

        u eta u^+ - v eta v^+ = eta,    u eta v^T - v eta u^T = 0,

    with eta = +1 on forward and -1 on backward modes. Written out in 3x3 quarters these are the six identity
    families over all index pairs.

    With *normalized*, the residual is divided by max(1, |M|^2): the round-off floor of an amplifying transfer
    matrix grows with its norm.
    """
    u, v = iomap.u, iomap.v
    first = u @ ETA @ u.conj().T - v @ ETA @ v.conj().T - ETA
    second = u @ ETA @ v.T - v @ ETA @ u.T
    residual = float(max(np.abs(first).max(), np.abs(second).max()))
    if normalized:
        residual /= max(1.0, np.linalg.norm(iomap.transfer.M, 2) ** 2)
    return residual


def bosonic_residual(bmap: BogoliubovMap) -> float:
    """Largest deviation from U U^+ - V V^+ = I and U V^T - V U^T = 0."""
    u, v = bmap.U, bmap.V
    first = u @ u.conj().T - v @ v.conj().T - np.eye(len(u))
    second = u @ v.T - v @ u.T
    return float(max(np.abs(first).max(), np.abs(second).max()))
