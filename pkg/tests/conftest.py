import pytest

from sweeps.spec import PointSpec
from waveguide.model import ClassicalBoundary, WaveguideConfig


@pytest.fixture
def working_config():
    return WaveguideConfig(L=2.0, K_s=5, K_i=5, K_F=5e-2, K_B=5e-2)


@pytest.fixture
def working_boundary():
    return ClassicalBoundary(A_sF0=0.1, A_iF0=0.1, A_pF0=10)


@pytest.fixture
def short_config():
    """The working-point couplings on a 0.5 mm structure; cheap enough for the transfer-matrix tests."""
    return WaveguideConfig(L=0.5, K_s=5, K_i=5, K_F=5e-2, K_B=5e-2)


@pytest.fixture
def zero_config():
    return WaveguideConfig(L=1.0)


@pytest.fixture
def forward_amplifier():
    """
    Forward-only degenerate-pump amplifier: no linear or backward coupling and no signal/idler seed, so the pump
    stays constant and sF(z) = cosh(gz) sF(0) + sinh(gz) iF(0)^+ with g = 2 K_F A_pF = 1/mm.
    """
    return PointSpec(
        config=WaveguideConfig(L=0.5, K_F=5e-2),
        boundary=ClassicalBoundary(A_pF0=10),
        solver={"classical": "analytic"},
    )


@pytest.fixture
def client():
    from app import app

    app.config["TESTING"] = True
    with app.test_client() as client:
        yield client
