import csv
import dataclasses
import itertools
from typing import Dict, Optional, Tuple

import numpy as np

from quantumstats.moments import GaussianMoments
from waveguide.modes import MODES, ModeId, modes_label, parse_modes

__all__ = (
    "SqueezingReport",
    "PhotonStatsReport",
    "squeeze_single",
    "squeeze_compound",
    "squeeze",
    "quadrature_variance",
    "squeezing_table",
    "intensity_moments",
    "export_reports_csv",
)


@dataclasses.dataclass(frozen=True)
class SqueezingReport:
    modes: Tuple[ModeId, ...]
    var_q: float
    var_p: float
    lambda_: float

    @property
    def label(self) -> str:
        return modes_label(self.modes)

    @property
    def nonclassical(self) -> bool:
        return self.lambda_ < len(self.modes)

    def as_dict(self) -> dict:
        return {"var_q": self.var_q, "var_p": self.var_p, "lambda": self.lambda_}


@dataclasses.dataclass(frozen=True)
class PhotonStatsReport:
    """
    Normally ordered integrated-intensity statistics. *fano* and *R_W* are None when the mean intensity
    vanishes; Monte-Carlo estimates also carry standard errors in *stderr*.
    """

    modes: Tuple[ModeId, ...]
    mean_W: float
    var_W: float
    fano: Optional[float]
    R_W: Optional[float]
    stderr: Optional[Dict[str, float]] = None
    n_samples: Optional[int] = None

    @property
    def label(self) -> str:
        return modes_label(self.modes)

    def as_dict(self) -> dict:
        out = {
            "mean_W": self.mean_W,
            "var_W": self.var_W,
            "fano": "undefined" if self.fano is None else self.fano,
            "R_W": "undefined" if self.R_W is None else self.R_W,
        }
        if self.stderr is not None:
            out["stderr"] = dict(self.stderr)
            out["n_samples"] = self.n_samples
        return out


# ==== squeezing ====
def squeeze_single(m: GaussianMoments, j) -> SqueezingReport:
    j = ModeId.parse(j)
    b, c = m.B[j.position], m.C[j.position]
    return SqueezingReport(
        modes=(j,),
        var_q=float(1 + 2 * (b + c.real)),
        var_p=float(1 + 2 * (b - c.real)),
        lambda_=float(1 + 2 * (b - abs(c))),
    )


def _compound_terms(m: GaussianMoments, j: ModeId, k: ModeId):
    a, b = j.position, k.position
    base = 1 + m.B[a] + m.B[b] - 2 * m.Dbar[a, b].real
    anomalous = m.C[a] + m.C[b] + 2 * m.D[a, b]
    return base, anomalous


def squeeze_compound(m: GaussianMoments, j, k) -> SqueezingReport:
    j, k = ModeId.parse(j), ModeId.parse(k)
    if j == k:
        raise ValueError(f"compound mode needs two distinct modes, got {j} twice")
    base, anomalous = _compound_terms(m, j, k)
    return SqueezingReport(
        modes=(j, k),
        var_q=float(2 * (base + anomalous.real)),
        var_p=float(2 * (base - anomalous.real)),
        lambda_=float(2 * (base - abs(anomalous))),
    )


def squeeze(m: GaussianMoments, modes) -> SqueezingReport:
    """Single or compound report depending on how many modes *modes* names."""
    modes = parse_modes(modes)
    if len(modes) == 1:
        return squeeze_single(m, modes[0])
    return squeeze_compound(m, *modes)


def quadrature_variance(m: GaussianMoments, modes, phi):
    """
    Variance of the quadrature measured with local-oscillator phase *phi* (scalar or array); phi = 0 gives
    var_q, phi = pi/2 gives var_p and the minimum over phi is the principal squeeze variance.
    """
    modes = parse_modes(modes)
    rotation = np.exp(-2j * np.asarray(phi, dtype=float))
    if len(modes) == 1:
        p = modes[0].position
        return 1 + 2 * (m.B[p] + np.real(m.C[p] * rotation))
    base, anomalous = _compound_terms(m, *modes)
    return 2 * (base + np.real(anomalous * rotation))


def squeezing_table(m: GaussianMoments) -> Dict[str, SqueezingReport]:
    """Reports for all six single modes and all fifteen pairs, keyed by label."""
    reports = [squeeze_single(m, mode) for mode in MODES]
    reports += [squeeze_compound(m, j, k) for j, k in itertools.combinations(MODES, 2)]
    return {r.label: r for r in reports}


# ==== photon statistics ====
def _single_intensity(m: GaussianMoments, j: ModeId):
    p = j.position
    b, c, xi = m.B[p], m.C[p], m.means[p]
    mean = b + abs(xi) ** 2
    var = b**2 + abs(c) ** 2 + 2 * b * abs(xi) ** 2 + 2 * np.real(c * np.conj(xi) ** 2)
    return mean, var


def _intensity_cross(m: GaussianMoments, j: ModeId, k: ModeId):
    """2 cov(W_j, W_k) for j != k."""
    a, b = j.position, k.position
    d, dbar = m.D[a, b], m.Dbar[a, b]
    xi_j, xi_k = m.means[a], m.means[b]
    return 2 * (
        abs(d) ** 2
        + abs(dbar) ** 2
        + 2 * np.real(d * np.conj(xi_j) * np.conj(xi_k))
        - 2 * np.real(dbar * xi_j * np.conj(xi_k))
    )


def intensity_moments(m: GaussianMoments, modes) -> PhotonStatsReport:
    """
    Mean and normally ordered variance of the integrated intensity W of one mode, or of W_j + W_k for a pair,
    with the Fano factor 1 + var/mean and the second reduced moment <W^2>_N / <W>^2.
    """
    modes = parse_modes(modes)
    mean, var = 0.0, 0.0
    for mode in modes:
        mode_mean, mode_var = _single_intensity(m, mode)
        mean += mode_mean
        var += mode_var
    if len(modes) == 2:
        var += _intensity_cross(m, *modes)
    mean, var = float(np.real(mean)), float(np.real(var))
    if mean == 0:
        return PhotonStatsReport(modes=modes, mean_W=mean, var_W=var, fano=None, R_W=None)
    return PhotonStatsReport(
        modes=modes, mean_W=mean, var_W=var, fano=1 + var / mean, R_W=(var + mean**2) / mean**2
    )


def export_reports_csv(reports, fp):
    """One row per (mode or pair, observable, value); Monte-Carlo standard errors get their own rows."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["modes", "observable", "value"])
    for report in reports:
        for key, value in report.as_dict().items():
            if key == "stderr":
                for name, err in value.items():
                    writer.writerow([report.label, f"stderr_{name}", format(err, ".17g")])
            elif isinstance(value, str) or value is None:
                writer.writerow([report.label, key, value])
            else:
                writer.writerow([report.label, key, format(value, ".17g")])
