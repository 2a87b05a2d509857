"""
Monte-Carlo check of the intensity-moment formulas.

Samples the antinormally ordered (Husimi) Gaussian distribution of the selected modes and converts the sampled
antinormal moments to normal ordering with the exact ordering relations

    <W>_N     = <|a|^2>_A - 1
    <:W^2:>_N = <|a|^4>_A - 4 <|a|^2>_A + 2                         (single mode)
    <W_j W_k> = <|a_j|^2 |a_k|^2>_A - <|a_j|^2>_A - <|a_k|^2>_A + 1  (j != k)

Samples are drawn in fixed-size shards; shard *i* uses its own Philox stream derived from (seed, i), so the
estimate depends only on the seed and the sample count.
"""

import logging

import numpy as np

import config as settings
from quantumstats.errors import NonGaussianSampling
from quantumstats.moments import GaussianMoments
from quantumstats.observables import PhotonStatsReport
from waveguide.modes import parse_modes

__all__ = ("mc_oracle", "husimi_covariance")

log = logging.getLogger(__name__)


def husimi_covariance(m: GaussianMoments, positions):
    """
    Real covariance of (Re a, Im a) of the Husimi distribution restricted to *positions*.

    Gamma_jk = E[da_j da_k^*] = delta_jk (1 + B_j) - Dbar_kj and S_jk = E[da_j da_k] (C on the diagonal).
    """
    idx = np.asarray(positions)
    gamma = np.eye(len(idx)) + m.normal_matrix()[np.ix_(idx, idx)].T
    s = m.anomalous_matrix()[np.ix_(idx, idx)]
    sxx = np.real(gamma + s) / 2
    syy = np.real(gamma - s) / 2
    sxy = (np.imag(s) - np.imag(gamma)) / 2
    return np.block([[sxx, sxy], [sxy.T, syy]])


def _shard_sums(chol, means, n, rng):
    k = len(means)
    z = rng.standard_normal((n, 2 * k)) @ chol.T
    alpha = means + z[:, :k] + 1j * z[:, k:]
    power = np.abs(alpha) ** 2
    g = power.sum(axis=1) - k
    f = (power**2 - 4 * power + 2).sum(axis=1)
    if k == 2:
        f += 2 * (power[:, 0] * power[:, 1] - power[:, 0] - power[:, 1] + 1)
    return np.array([g.sum(), f.sum(), (g * g).sum(), (f * f).sum(), (g * f).sum()])


def mc_oracle(m: GaussianMoments, modes, n_samples: int = None, seed: int = 0) -> PhotonStatsReport:
    """
    Estimates mean_W, var_W, fano and R_W of one mode or a pair with standard errors (delta method).

    :raises NonGaussianSampling: if the Husimi covariance is not positive definite
    """
    modes = parse_modes(modes)
    if n_samples is None:
        n_samples = settings.MC_SAMPLES
    positions = [mode.position for mode in modes]
    try:
        chol = np.linalg.cholesky(husimi_covariance(m, positions))
    except np.linalg.LinAlgError:
        raise NonGaussianSampling(
            f"Husimi covariance of {','.join(str(x) for x in modes)} is not positive definite"
        )
    means = m.means[positions]

    sums = np.zeros(5)
    shard, done = 0, 0
    while done < n_samples:
        size = min(settings.MC_SHARD_SIZE, n_samples - done)
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, shard])))
        sums += _shard_sums(chol, means, size, rng)
        done += size
        shard += 1
    log.debug(f"monte carlo: {n_samples} samples in {shard} shards for {modes}")

    n = n_samples
    g, f, gg, ff, gf = sums / n
    cov = np.array([[gg - g * g, gf - g * f], [gf - g * f, ff - f * f]]) / n

    def stderr(grad):
        grad = np.asarray(grad)
        return float(np.sqrt(max(grad @ cov @ grad, 0.0)))

    var = f - g * g
    errors = {"mean_W": stderr([1.0, 0.0]), "var_W": stderr([-2 * g, 1.0])}
    if g == 0:
        return PhotonStatsReport(modes, float(g), float(var), None, None, errors, n)
    fano = 1 + var / g
    r_w = f / g**2
    errors["fano"] = stderr([-f / g**2 - 1, 1 / g])
    errors["R_W"] = stderr([-2 * f / g**3, 1 / g**2])
    return PhotonStatsReport(modes, float(g), float(var), float(fano), float(r_w), errors, n)
