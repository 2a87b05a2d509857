import io
import math

import numpy as np
import pytest

from classical import solve_classical_analytic
from fluctuations import (
    IllConditionedBackwardBlock,
    TransferBlowUp,
    TransferMatrix,
    bosonic_residual,
    coefficient_matrix,
    commutation_residual,
    export_transfer_csv,
    integrate_transfer,
    real_representation,
    rearrange_input_output,
    reality_defect,
)
from lib.errors import InvalidSolverOption
from waveguide.model import ClassicalBoundary, WaveguideConfig


@pytest.fixture
def short_profile(short_config, working_boundary):
    return solve_classical_analytic(short_config, working_boundary)


def test_generator_conjugation_pairing(short_config, short_profile):
    g = coefficient_matrix(short_config, short_profile, 0.2)
    assert g.shape == (12, 12)
    assert reality_defect(g) == 0
    # forward block never couples into the conjugate of its own mode
    assert g[0, 1] == 0


def test_zero_coupling_gives_identity(zero_config):
    profile = solve_classical_analytic(zero_config, ClassicalBoundary(A_pF0=10))
    transfer = integrate_transfer(zero_config, profile)
    assert np.array_equal(transfer.M, np.eye(12))
    iomap = rearrange_input_output(transfer)
    assert np.allclose(iomap.T, np.eye(12))
    assert commutation_residual(iomap) == 0
    assert iomap.condition_number == pytest.approx(1)


def test_forward_amplifier_blocks():
    config = WaveguideConfig(L=0.5, K_F=5e-2)
    profile = solve_classical_analytic(config, ClassicalBoundary(A_pF0=10))
    iomap = rearrange_input_output(integrate_transfer(config, profile))
    # g = 2 K_F A_pF = 1/mm
    assert iomap.u[0, 0] == pytest.approx(math.cosh(0.5), rel=1e-10)
    assert iomap.v[0, 1] == pytest.approx(math.sinh(0.5), rel=1e-10)
    assert iomap.v[1, 0] == pytest.approx(math.sinh(0.5), rel=1e-10)
    assert np.allclose(iomap.u22, np.eye(3))
    assert np.allclose(iomap.T_BB, np.eye(6))


def test_commutator_residual_small(short_config, short_profile):
    iomap = rearrange_input_output(integrate_transfer(short_config, short_profile))
    assert iomap.normalized_residual < 1e-8
    assert iomap.normalized_residual <= iomap.residual
    assert reality_defect(iomap.transfer) < 1e-10
    assert bosonic_residual(iomap.bogoliubov()) < 1e-7


def test_commutator_residual_detects_wrong_generator(short_config, short_profile):
    def flipped(config, profile, z):
        g = coefficient_matrix(config, profile, z)
        g[0, 6] = -g[0, 6]
        g[1, 7] = -g[1, 7]
        return g

    iomap = rearrange_input_output(integrate_transfer(short_config, short_profile, generator=flipped))
    assert iomap.normalized_residual > 1e-3


def test_composition(short_config, short_profile):
    full = integrate_transfer(short_config, short_profile, steps=500)
    first = integrate_transfer(short_config, short_profile, steps=250, z0=0.0, z1=0.25)
    second = integrate_transfer(short_config, short_profile, steps=250, z0=0.25, z1=0.5)
    composed = second @ first
    assert isinstance(composed, TransferMatrix)
    assert (composed.z0, composed.z1, composed.steps) == (0.0, 0.5, 500)
    assert np.allclose(composed.M, full.M, rtol=1e-9, atol=1e-12)


def test_too_few_steps(short_config, short_profile):
    with pytest.raises(InvalidSolverOption):
        integrate_transfer(short_config, short_profile, steps=10)
    relaxed = integrate_transfer(short_config, short_profile, steps=10, strict=False)
    assert relaxed.steps == 10


def test_blow_up(short_config, short_profile):
    def huge(config, profile, z):
        return np.full((12, 12), 1e200, dtype=complex)

    with pytest.raises(TransferBlowUp) as error:
        integrate_transfer(short_config, short_profile, generator=huge)
    assert error.value.z > 0


def test_ill_conditioned_backward_block():
    identity = TransferMatrix(np.eye(12, dtype=complex), 100, 0.0, 1.0)
    with pytest.raises(IllConditionedBackwardBlock) as error:
        rearrange_input_output(identity, cond_threshold=0.5)
    assert error.value.condition_number == pytest.approx(1)

    singular = TransferMatrix(np.zeros((12, 12), dtype=complex), 100, 0.0, 1.0)
    with pytest.raises(IllConditionedBackwardBlock):
        rearrange_input_output(singular)


def test_export_transfer_csv(short_config, short_profile):
    transfer = integrate_transfer(short_config, short_profile)
    assert real_representation(transfer.M).shape == (24, 24)
    buf = io.StringIO()
    export_transfer_csv(transfer, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0].startswith("# transfer matrix over [0.0, 0.5] mm")
    header = lines[1].split(",")
    assert header[0] == "row"
    assert header[1] == "re_sF" and header[13] == "im_sF"
    assert len(header) == 25
    assert len(lines) == 2 + 24
    assert float(lines[2].split(",")[1]) == pytest.approx(transfer.M[0, 0].real)
