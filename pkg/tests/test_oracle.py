import math

import numpy as np
import pytest

import config as settings
from classical import solve_classical_analytic
from oracle import (
    QuadratureNotConverged,
    coherent_amplitudes,
    nested_integral,
    single_integral,
    weak_integrals,
    weak_intensity_variance,
    weak_squeeze,
)
from waveguide.model import ClassicalBoundary, InputModeState, WaveguideConfig


def _weak_amplifier(k_f):
    config = WaveguideConfig(L=0.5, K_F=k_f)
    return weak_integrals(config, solve_classical_analytic(config, ClassicalBoundary(A_pF0=10)))


# ==== quadrature ====
def test_single_integral():
    assert single_integral(lambda z: z**2, 3.0) == pytest.approx(9.0)
    expected = (np.exp(2j) - 1) / 1j
    assert single_integral(lambda z: np.exp(1j * z), 2.0) == pytest.approx(expected, rel=1e-9)


def test_nested_integral():
    ones = np.ones_like
    assert nested_integral(ones, ones, 1.7) == pytest.approx(1.7**2 / 2, rel=1e-12)
    assert nested_integral(lambda z: z, ones, 2.0) == pytest.approx(8 / 3, rel=1e-12)
    # int_0^L e^{iz} int_0^z e^{-iz'} dz' dz
    value = nested_integral(lambda z: np.exp(1j * z), lambda z: np.exp(-1j * z), 3.0)
    assert value == pytest.approx(1j * (3.0 - (np.exp(3j) - 1) / 1j), rel=1e-9)


def test_nested_integral_gives_up(monkeypatch):
    monkeypatch.setattr(settings, "GL_MAX_DOUBLINGS", 0)
    with pytest.raises(QuadratureNotConverged) as error:
        nested_integral(np.ones_like, np.ones_like, 2.0, name="I_test")
    assert error.value.integral == "I_test"
    assert error.value.interval == (0.0, 2.0)


# ==== interaction integrals ====
def test_constant_pump_integral():
    integrals = _weak_amplifier(5e-2)
    # 2 K_F A_pF L
    assert integrals.I_pF == pytest.approx(0.5, rel=1e-9)
    assert integrals.I_pB == 0
    assert integrals.I_s == 0


def test_linear_coupling_integrals():
    config = WaveguideConfig(L=0.5, K_s=2, K_i=3)
    integrals = weak_integrals(config, solve_classical_analytic(config, ClassicalBoundary()))
    assert integrals.I_s == pytest.approx(1j)
    assert integrals.I_i == pytest.approx(-1.5j)


def test_weak_squeeze_matches_forward_amplifier_to_second_order():
    x = 2 * 5e-4 * 10 * 0.5
    squeeze = weak_squeeze(_weak_amplifier(5e-4))
    assert squeeze["sF,iF"] == pytest.approx(2 * (1 - 2 * x + 2 * x**2), rel=1e-9)
    assert squeeze["sF,iF"] == pytest.approx(2 * math.exp(-2 * x), abs=1e-6)
    assert squeeze["sF"] == pytest.approx(math.cosh(2 * x), abs=1e-8)
    assert squeeze["pF"] == 1.0
    assert squeeze["pF,pB"] == 2.0
    assert len(squeeze) == 15


def test_weak_intensity_variance():
    integrals = _weak_amplifier(5e-4)
    x = abs(integrals.I_pF)
    variances = weak_intensity_variance(integrals, {"sF": InputModeState(xi=2)})
    assert variances["sF"] == pytest.approx(2 * x**2 * 4)
    assert variances["iF"] == 0
    # vacuum pair: 2 |I_pF|^2 plus nothing from the coherent terms
    assert weak_intensity_variance(integrals, {})["sF,iF"] == pytest.approx(2 * x**2)


def test_coherent_amplitudes():
    amplitudes = coherent_amplitudes({"sF": {"xi": [1, 2]}, "iB": 0.5, "pF": InputModeState(xi=-1)})
    assert amplitudes == {"sF": 1 + 2j, "iF": 0, "pF": -1, "sB": 0, "iB": 0.5, "pB": 0}
    with pytest.raises(ValueError):
        coherent_amplitudes({"xX": 1})
