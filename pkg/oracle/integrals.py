"""
Interaction integrals of the weak-interaction approximation.

Single integrals use adaptive quadrature on the real and imaginary parts. Double integrals
int_0^L dz f(z) int_0^z dz' g(z') use composite Gauss-Legendre panels; the inner antiderivative at every outer
node is the cumulative sum over whole panels plus one mapped Gauss-Legendre rule on the partial panel.
"""

import dataclasses
import logging
import math

import numpy as np
from scipy import integrate

import config as settings
from oracle.errors import QuadratureNotConverged
from waveguide.couplings import coupling_rates
from waveguide.model import WaveguideConfig

__all__ = ("WeakIntegrals", "weak_integrals", "single_integral", "nested_integral")

log = logging.getLogger(__name__)

QUAD_LIMIT = 200
ABS_FLOOR = 1e-15


@dataclasses.dataclass(frozen=True)
class WeakIntegrals:
    I_pF: complex
    I_pB: complex
    I_i_pF: complex
    I_pB_s: complex
    I_sF_pF: complex
    I_pB_sB: complex
    I_s: complex
    I_i: complex


def _flat(fn):
    def wrapped(z):
        z = np.asarray(z, dtype=float)
        return np.asarray(fn(z.ravel())).reshape(z.shape)

    return wrapped


def single_integral(fn, length: float, name: str = "integral") -> complex:
    """int_0^L fn(z) dz for a complex integrand, to relative ``QUAD_RTOL``."""
    parts = []
    for part in (np.real, np.imag):
        result = integrate.quad(
            lambda z: float(part(fn(np.array([z]))[0])),
            0.0,
            length,
            epsabs=ABS_FLOOR,
            epsrel=settings.QUAD_RTOL,
            limit=QUAD_LIMIT,
            full_output=1,
        )
        if len(result) > 3:
            info = result[2]
            last = info["last"]
            worst = int(np.argmax(info["elist"][:last]))
            raise QuadratureNotConverged(name, (info["alist"][worst], info["blist"][worst]))
        parts.append(result[0])
    return complex(parts[0], parts[1])


def _panel_contributions(outer, inner, length, panels, nodes, weights):
    edges = np.linspace(0.0, length, panels + 1)
    a, b = edges[:-1], edges[1:]
    half = (b - a) / 2
    z = a[:, None] + half[:, None] * (nodes + 1)  # (P, n)

    whole = (half[:, None] * weights * inner(z)).sum(axis=1)
    before = np.concatenate(([0.0], np.cumsum(whole)[:-1]))
    sub_half = (z - a[:, None]) / 2
    zz = a[:, None, None] + sub_half[:, :, None] * (nodes + 1)  # (P, n, n)
    partial = (sub_half[:, :, None] * weights * inner(zz)).sum(axis=2)

    return (half[:, None] * weights * outer(z) * (before[:, None] + partial)).sum(axis=1), edges


def nested_integral(outer, inner, length: float, name: str = "integral") -> complex:
    """
    int_0^L dz outer(z) int_0^z dz' inner(z'), doubling the panel count until the relative change drops below
    ``GL_RTOL``.
    """
    nodes, weights = np.polynomial.legendre.leggauss(settings.GL_NODES_PER_MM)
    panels = max(1, math.ceil(length))
    previous, total = None, None
    worst_interval = (0.0, length)
    for _ in range(settings.GL_MAX_DOUBLINGS + 1):
        contributions, edges = _panel_contributions(outer, inner, length, panels, nodes, weights)
        total = contributions.sum()
        if previous is not None:
            change = abs(total - previous.sum())
            log.debug(f"{name}: {panels} panels, change {change:.3e}")
            if change <= settings.GL_RTOL * abs(total) + ABS_FLOOR:
                return complex(total)
            coarse_change = np.abs(previous - contributions.reshape(-1, 2).sum(axis=1))
            worst = int(np.argmax(coarse_change))
            worst_interval = (edges[2 * worst], edges[2 * worst + 2])
        previous = contributions
        panels *= 2
    raise QuadratureNotConverged(name, worst_interval)


def weak_integrals(config: WaveguideConfig, profile) -> WeakIntegrals:
    """All interaction integrals for *config* with classical amplitudes from *profile* (analytic preferred)."""
    length = config.L

    def rates(z):
        return coupling_rates(config, z)

    @_flat
    def pump_f(z):
        return rates(z)[2] * profile(z)[2]

    @_flat
    def pump_b(z):
        return rates(z)[3] * profile(z)[5]

    @_flat
    def linear_s(z):
        return rates(z)[0] * np.ones_like(z)

    @_flat
    def linear_i_conj(z):
        return np.conj(rates(z)[1]) * np.ones_like(z)

    @_flat
    def signal_f(z):
        return np.conj(rates(z)[2]) * profile(z)[0]

    @_flat
    def signal_b(z):
        return np.conj(rates(z)[3]) * profile(z)[3]

    integrals = WeakIntegrals(
        I_pF=single_integral(pump_f, length, "I_pF"),
        I_pB=single_integral(pump_b, length, "I_pB"),
        I_i_pF=nested_integral(linear_i_conj, pump_f, length, "I_i_pF"),
        I_pB_s=nested_integral(pump_b, linear_s, length, "I_pB_s"),
        I_sF_pF=nested_integral(signal_f, pump_f, length, "I_sF_pF"),
        I_pB_sB=nested_integral(pump_b, signal_b, length, "I_pB_sB"),
        I_s=single_integral(linear_s, length, "I_s"),
        I_i=single_integral(linear_i_conj, length, "I_i"),
    )
    log.debug(f"weak integrals: |I_pF| = {abs(integrals.I_pF):.6g}, |I_pB| = {abs(integrals.I_pB):.6g}")
    return integrals
