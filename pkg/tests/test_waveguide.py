import math

import numpy as np
import pytest
from pydantic import ValidationError

from waveguide import coupling_rates, rescale_units
from waveguide.couplings import field_derivatives, photon_flux
from waveguide.errors import UnknownUnit, UnphysicalState
from waveguide.model import (
    ClassicalBoundary,
    Complex,
    InputModeState,
    MomentPair,
    WaveguideConfig,
    antinormal_from_state,
    complete_inputs,
    normal_from_antinormal,
)
from waveguide.modes import MODES, ModeId, modes_label, parse_modes, swap_signal_idler_mode


# ==== units ====
def test_rescale_length():
    assert rescale_units(2, "mm", "m") == pytest.approx(2e-3)
    assert rescale_units(2e-3, "SI", "mm") == pytest.approx(2)
    assert rescale_units(2, "mm", "SI") == pytest.approx(2e-3)


def test_rescale_fields_and_wavenumbers():
    assert rescale_units(1.0, "1e6 V/m", "10 V/m") == pytest.approx(1e5)
    assert rescale_units(1.0, "MV/m", "SI") == pytest.approx(1e6)
    assert rescale_units(5.0, "1/mm", "1/m") == pytest.approx(5e3)


def test_rescale_arrays():
    assert np.allclose(rescale_units(np.array([1.0, 2.0]), "mm", "m"), [1e-3, 2e-3])


def test_rescale_unknown_unit():
    with pytest.raises(UnknownUnit) as error:
        rescale_units(1, "furlong", "mm")
    assert "furlong" in str(error.value)


def test_rescale_dimension_mismatch():
    with pytest.raises(UnknownUnit) as error:
        rescale_units(1, "mm", "V/m")
    assert "cannot convert" in str(error.value)


# ==== modes ====
def test_mode_order_and_slots():
    assert [m.value for m in MODES] == ["sF", "iF", "pF", "sB", "iB", "pB"]
    assert [m.position for m in MODES] == [0, 1, 2, 3, 4, 5]
    assert [m.slot for m in MODES] == [0, 2, 4, 6, 8, 10]
    assert ModeId.IB.field == "i"
    assert ModeId.IB.direction == "B"


def test_parse_modes():
    assert parse_modes("sF") == (ModeId.SF,)
    assert parse_modes("sF, iB") == (ModeId.SF, ModeId.IB)
    assert parse_modes(("pF", ModeId.PB)) == (ModeId.PF, ModeId.PB)
    assert modes_label(parse_modes("sB,iB")) == "sB,iB"


@pytest.mark.parametrize("label", ["sX", "sF,sF", "sF,iF,pF", ""])
def test_parse_modes_invalid(label):
    with pytest.raises(ValueError):
        parse_modes(label)


def test_swap_signal_idler_mode():
    assert [swap_signal_idler_mode(m).value for m in MODES] == ["iF", "sF", "pF", "iB", "sB", "pB"]


# ==== model ====
def test_complex_field_formats():
    assert Complex.validate([1, 2]) == 1 + 2j
    assert Complex.validate({"re": 0.5}) == 0.5
    assert Complex.validate("1 - 2j") == 1 - 2j
    assert Complex.validate(3) == 3


def test_config_validation():
    with pytest.raises(ValidationError) as error:
        WaveguideConfig(L=0)
    assert "length must be positive" in str(error.value)
    with pytest.raises(ValidationError):
        WaveguideConfig(L=1, delta_s=math.inf)
    with pytest.raises(ValidationError):
        WaveguideConfig(L=1, unknown=3)


def test_config_scaled_and_swapped():
    config = WaveguideConfig(L=1, K_s=5, K_i=3, K_F=0.1, K_B=0.2, delta_s=1, delta_i=2)
    scaled = config.scaled(0.5)
    assert (scaled.K_s, scaled.K_i, scaled.K_F, scaled.K_B) == (2.5, 1.5, 0.05, 0.1)
    swapped = config.swap_signal_idler()
    assert (swapped.K_s, swapped.K_i, swapped.delta_s, swapped.delta_i) == (3, 5, 2, 1)
    assert swapped.swap_signal_idler() == config


def test_boundary_swap():
    boundary = ClassicalBoundary(A_sF0=0.1, A_iF0=0.2j, A_pF0=10)
    assert boundary.swap_signal_idler() == ClassicalBoundary(A_sF0=0.2j, A_iF0=0.1, A_pF0=10)


def test_input_state_validation():
    with pytest.raises(ValidationError):
        InputModeState(r=-1)
    with pytest.raises(ValidationError):
        InputModeState(n_ch=-0.5)


def test_complete_inputs_fills_vacuum():
    inputs = complete_inputs({"sF": {"xi": 1}})
    assert set(inputs) == set(MODES)
    assert inputs[ModeId.SF].xi == 1
    assert inputs[ModeId.PB] == InputModeState()


def test_antinormal_moments_of_squeezed_thermal_state():
    state = InputModeState(r=0.5, theta=math.pi, n_ch=0.3)
    antinormal = antinormal_from_state(state)
    assert antinormal.B == pytest.approx(math.cosh(0.5) ** 2 + 0.3)
    assert antinormal.C == pytest.approx(-0.5 * math.sinh(1.0))
    normal = normal_from_antinormal(antinormal)
    assert normal.B == pytest.approx(math.sinh(0.5) ** 2 + 0.3)
    assert normal.ordering == "normal"


def test_normal_from_antinormal_rejects_unphysical():
    with pytest.raises(UnphysicalState):
        normal_from_antinormal(MomentPair(B=0.5, C=0, ordering="antinormal"))
    with pytest.raises(ValueError):
        normal_from_antinormal(MomentPair(B=2, C=0))


# ==== couplings ====
def test_coupling_rates_at_origin():
    config = WaveguideConfig(L=1, K_s=5, K_i=3, K_F=0.1, K_B=0.2, delta_s=1, delta_F=2)
    ks, ki, kf, kb = coupling_rates(config, 0.0)
    assert (ks, ki, kf, kb) == (5j, 3j, 0.2, 0.4)
    ks, _, kf, _ = coupling_rates(config, np.pi / 2)
    assert ks == pytest.approx(5j * np.exp(-0.5j * np.pi))
    assert kf == pytest.approx(0.2 * np.exp(1j * np.pi))


def test_photon_flux_is_conserved_by_the_field_equations():
    config = WaveguideConfig(L=1, K_s=5, K_i=3, K_F=0.1, K_B=0.2, delta_s=1, delta_i=-2, delta_F=0.5, delta_B=1.5)
    rng = np.random.default_rng(3)
    amps = rng.normal(size=6) + 1j * rng.normal(size=6)
    derivative = field_derivatives(config, 0.3, amps)
    weights = np.array([1, 1, 2, -1, -1, -2])
    flux_rate = np.sum(weights * 2 * np.real(np.conj(amps) * derivative))
    assert abs(flux_rate) < 1e-12
    assert photon_flux(amps) == pytest.approx(np.sum(weights * np.abs(amps) ** 2))
