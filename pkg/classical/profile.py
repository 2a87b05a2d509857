import abc
import csv

import numpy as np

from waveguide.couplings import photon_flux
from waveguide.model import ClassicalBoundary, WaveguideConfig
from waveguide.modes import MODES, ModeId

__all__ = ("ClassicalFieldProfile", "conservation_residual", "flux_invariants", "export_profile_csv")


class ClassicalFieldProfile(abc.ABC):
    """
    The six complex mean amplitudes as functions of position z in [0, L].

    Calling a profile with a scalar z returns shape (6,) in canonical mode order; an array of n positions
    gives shape (6, n).
    """

    provenance = ...

    def __init__(self, config: WaveguideConfig, boundary: ClassicalBoundary, grid: np.ndarray):
        """
        :param grid: the sample positions used for diagnostics (conservation, export)
        """
        self.config = config
        self.boundary = boundary
        self.grid = grid

    @abc.abstractmethod
    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError

    @property
    def length(self) -> float:
        return self.config.L

    def amplitude(self, mode: ModeId, z):
        return self(z)[ModeId.parse(mode).position]

    def sampled(self):
        """Returns (grid, amplitudes on the grid)."""
        return self.grid, self(self.grid)

    def boundary_residuals(self) -> np.ndarray:
        """|A_sB(L)|, |A_iB(L)|, |A_pB(L)|."""
        return np.abs(self(self.length)[3:])

    def __repr__(self):
        return f"<{type(self).__name__} L={self.length} points={len(self.grid)}>"


def conservation_residual(profile: ClassicalFieldProfile) -> float:
    """max over the diagnostic grid of |N(z) - N(0)| / max(1, |N(0)|) for the photon-number flux N."""
    _, amps = profile.sampled()
    flux = photon_flux(amps)
    return float(np.max(np.abs(flux - flux[0])) / max(1.0, abs(flux[0])))


def flux_invariants(profile: ClassicalFieldProfile) -> dict:
    """
    |A_aF|^2 - |A_aB|^2 along the grid for a in {s, i}. Constant in z when the nonlinear couplings vanish.
    """
    _, amps = profile.sampled()
    power = np.abs(amps) ** 2
    return {"s": power[0] - power[3], "i": power[1] - power[4]}


def export_profile_csv(profile: ClassicalFieldProfile, fp):
    """Writes columns z, Re/Im of each of the six amplitudes, one row per grid point."""
    grid, amps = profile.sampled()
    writer = csv.writer(fp, lineterminator="\n")
    fp.write(f"# provenance: {profile.provenance}\n")
    fp.write(f"# config: {profile.config.json()}\n")
    fp.write(f"# boundary: {profile.boundary.json()}\n")
    header = ["z"]
    for mode in MODES:
        header += [f"re_{mode}", f"im_{mode}"]
    writer.writerow(header)
    for k, z in enumerate(grid):
        row = [repr(float(z))]
        for value in amps[:, k]:
            row += [repr(float(value.real)), repr(float(value.imag))]
        writer.writerow(row)
