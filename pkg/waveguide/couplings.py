import numpy as np

from waveguide.model import WaveguideConfig

__all__ = ("coupling_rates", "field_derivatives", "photon_flux")


def coupling_rates(config: WaveguideConfig, z):
    """
    Position-dependent couplings (Ks, Ki, KF, KB) of the mean-field and correction equations:

        Ks = i K_s exp(-i delta_s z),  Ki = i K_i exp(-i delta_i z)
        KF = 2 K_F exp(i delta_F z),   KB = 2 K_B exp(-i delta_B z)

    *z* may be a scalar or an array.
    """
    z = np.asarray(z, dtype=float)
    ks = 1j * config.K_s * np.exp(-1j * config.delta_s * z)
    ki = 1j * config.K_i * np.exp(-1j * config.delta_i * z)
    kf = 2 * config.K_F * np.exp(1j * config.delta_F * z)
    kb = 2 * config.K_B * np.exp(-1j * config.delta_B * z)
    return ks, ki, kf, kb


def field_derivatives(config: WaveguideConfig, z, amps: np.ndarray) -> np.ndarray:
    """
    Right-hand side of the mean-field coupled-mode equations.

    :param amps: amplitudes in canonical mode order (sF, iF, pF, sB, iB, pB), shape (6,) or (6, n) with *z*
        broadcasting against the trailing axis.
    """
    ks, ki, kf, kb = coupling_rates(config, z)
    s_f, i_f, p_f, s_b, i_b, p_b = amps
    return np.array(
        [
            ks * s_b + kf * p_f * np.conj(i_f),
            ki * i_b + kf * p_f * np.conj(s_f),
            -np.conj(kf) * s_f * i_f,
            np.conj(ks) * s_f - kb * p_b * np.conj(i_b),
            np.conj(ki) * i_f - kb * p_b * np.conj(s_b),
            np.conj(kb) * s_b * i_b,
        ]
    )


def photon_flux(amps: np.ndarray) -> np.ndarray:
    """The conserved photon-number flux |sF|^2 + |iF|^2 + 2|pF|^2 - |sB|^2 - |iB|^2 - 2|pB|^2."""
    weights = np.array([1.0, 1.0, 2.0, -1.0, -1.0, -2.0])
    weights = weights.reshape((6,) + (1,) * (np.ndim(amps) - 1))
    return np.sum(weights * np.abs(amps) ** 2, axis=0)
