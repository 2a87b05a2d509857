import csv
import dataclasses
import logging

import numpy as np

from fluctuations.errors import TransferBlowUp
from fluctuations.generator import coefficient_matrix
from waveguide.integrate import rk4_linear_step, step_count
from waveguide.model import WaveguideConfig

__all__ = ("TransferMatrix", "integrate_transfer", "reality_defect", "export_transfer_csv", "real_representation")

log = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class TransferMatrix:
    """
    12x12 map of the stacked corrections from z0 to z1 (by default 0 to L), in the interleaved
    (operator, conjugate) layout documented in :mod:`fluctuations.generator`.
    """

    M: np.ndarray
    steps: int
    z0: float
    z1: float

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        """Composition: ``later @ earlier`` maps from earlier.z0 to later.z1."""
        return TransferMatrix(self.M @ other.M, self.steps + other.steps, other.z0, self.z1)


def integrate_transfer(
    config: WaveguideConfig,
    profile,
    steps: int = None,
    generator=coefficient_matrix,
    z0: float = 0.0,
    z1: float = None,
    strict: bool = True,
) -> TransferMatrix:
    """
    Integrates dM/dz = G(z) M from M(z0) = I with fixed-step RK4.

    :param profile: classical profile supplying the amplitudes at each node and midpoint
    :param generator: callable ``(config, profile, z) -> G``; replaced in tests to probe the checks
    :param strict: enforce the minimum step count (convergence studies pass False)
    :raises TransferBlowUp: when the matrix stops being finite
    """
    if z1 is None:
        z1 = config.L
    n = step_count(z1 - z0, steps, strict=strict)
    h = (z1 - z0) / n
    m = np.eye(12, dtype=complex)
    g0 = generator(config, profile, z0)
    for k in range(n):
        z = z0 + k * h
        gm = generator(config, profile, z + h / 2)
        g1 = generator(config, profile, z + h)
        m = rk4_linear_step(g0, gm, g1, m, h)
        if not np.isfinite(m).all():
            raise TransferBlowUp(z + h)
        g0 = g1
    log.debug(f"transfer matrix over [{z0}, {z1}] in {n} steps, max |M| = {np.abs(m).max():.3e}")
    return TransferMatrix(m, n, z0, z1)


def reality_defect(m) -> float:
    """Largest deviation of *m* from the conjugation pairing of operator and conjugate rows/columns."""
    if isinstance(m, TransferMatrix):
        m = m.M
    diagonal = np.abs(m[1::2, 1::2] - np.conj(m[0::2, 0::2]))
    cross = np.abs(m[1::2, 0::2] - np.conj(m[0::2, 1::2]))
    return float(max(diagonal.max(), cross.max()))


def real_representation(m: np.ndarray) -> np.ndarray:
    """[[Re M, -Im M], [Im M, Re M]]: the real 2n x 2n matrix acting on (Re x, Im x)."""
    return np.block([[m.real, -m.imag], [m.imag, m.real]])


def export_transfer_csv(transfer: TransferMatrix, fp):
    """
    Writes the 24x24 real representation of the transfer matrix. Rows/columns 0-11 are the real parts of the
    stacked components (sF, sF+, iF, iF+, pF, pF+, sB, sB+, iB, iB+, pB, pB+), rows/columns 12-23 their imaginary
    parts.
    """
    labels = ["sF", "sF+", "iF", "iF+", "pF", "pF+", "sB", "sB+", "iB", "iB+", "pB", "pB+"]
    header = [f"re_{x}" for x in labels] + [f"im_{x}" for x in labels]
    fp.write(f"# transfer matrix over [{transfer.z0!r}, {transfer.z1!r}] mm, {transfer.steps} RK4 steps\n")
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["row"] + header)
    for label, row in zip(header, real_representation(transfer.M)):
        writer.writerow([label] + [repr(float(x)) for x in row])
