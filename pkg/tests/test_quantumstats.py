import io
import math

import numpy as np
import pytest

from quantumstats import (
    GaussianMoments,
    NonGaussianSampling,
    export_reports_csv,
    husimi_covariance,
    input_moments,
    intensity_moments,
    mc_oracle,
    propagate_means,
    propagate_second_moments,
    quadrature_variance,
    squeeze,
    squeeze_compound,
    squeeze_single,
    squeezing_table,
)
from sweeps.pipeline import run_pipeline
from waveguide.errors import UnphysicalState
from waveguide.model import MomentPair, normal_from_antinormal

S = math.sinh(0.5)
C = math.cosh(0.5)


@pytest.fixture
def amplified(forward_amplifier):
    return run_pipeline(forward_amplifier)


# ==== squeezing ====
def test_forward_amplifier_squeezing(amplified):
    m = amplified.moments
    assert m.B[0] == pytest.approx(S**2, rel=1e-9)
    assert m.D[0, 1] == pytest.approx(C * S, rel=1e-9)
    assert squeeze_single(m, "sF").lambda_ == pytest.approx(math.cosh(1.0), rel=1e-9)
    pair = squeeze(m, "sF,iF")
    assert pair.lambda_ == pytest.approx(2 / math.e, rel=1e-9)
    assert pair.nonclassical
    assert squeeze(m, "sB").lambda_ == pytest.approx(1)
    assert not squeeze(m, "sB,iB").nonclassical


def test_squeezing_table(amplified):
    table = squeezing_table(amplified.moments)
    assert len(table) == 21
    assert {"sF", "pB", "sF,iF", "iB,pB", "pF,pB"} <= set(table)
    assert table["sF,iF"].as_dict()["lambda"] == pytest.approx(2 / math.e, rel=1e-9)


def test_compound_needs_distinct_modes(amplified):
    with pytest.raises(ValueError):
        squeeze_compound(amplified.moments, "sF", "sF")


def test_quadrature_variance(amplified):
    m = amplified.moments
    report = squeeze(m, "sF,iF")
    assert quadrature_variance(m, "sF,iF", 0.0) == pytest.approx(report.var_q)
    assert quadrature_variance(m, "sF,iF", math.pi / 2) == pytest.approx(report.var_p)
    phis = np.linspace(0, math.pi, 2001)
    variances = quadrature_variance(m, "sF,iF", phis)
    assert variances.min() >= report.lambda_ - 1e-12
    assert variances.min() == pytest.approx(report.lambda_, abs=1e-5)


def test_input_squeezed_vacuum():
    m = input_moments({"sF": {"r": 0.3, "theta": 0.7}})
    assert squeeze_single(m, "sF").lambda_ == pytest.approx(math.exp(-0.6))
    assert squeeze_single(m, "iF").lambda_ == pytest.approx(1)


# ==== photon statistics ====
def test_forward_amplifier_intensity(amplified):
    m = amplified.moments
    single = intensity_moments(m, "sF")
    assert single.mean_W == pytest.approx(S**2, rel=1e-9)
    assert single.fano == pytest.approx(1 + S**2, rel=1e-9)
    pair = intensity_moments(m, "sF,iF")
    assert pair.mean_W == pytest.approx(2 * S**2, rel=1e-9)
    assert pair.var_W == pytest.approx(4 * S**4 + 2 * S**2, rel=1e-9)


def test_vacuum_fano_undefined(amplified):
    report = intensity_moments(amplified.moments, "pB")
    assert report.fano is None
    assert report.as_dict()["fano"] == "undefined"
    assert report.as_dict()["R_W"] == "undefined"


def test_coherent_and_thermal_statistics():
    m = input_moments({"sF": {"xi": 2}, "iF": {"n_ch": 1.5}})
    coherent = intensity_moments(m, "sF")
    assert (coherent.mean_W, coherent.var_W, coherent.fano, coherent.R_W) == pytest.approx((4, 0, 1, 1))
    thermal = intensity_moments(m, "iF")
    assert thermal.fano == pytest.approx(2.5)
    assert thermal.R_W == pytest.approx(2)


def test_propagate_means(amplified):
    means = propagate_means(amplified.iomap, {"sF": {"xi": 1}})
    assert means[0] == pytest.approx(C, rel=1e-9)
    assert means[1] == pytest.approx(S, rel=1e-9)
    assert means[3] == 0


def test_input_state_must_be_physical():
    with pytest.raises(UnphysicalState):
        normal_from_antinormal(MomentPair(B=0.2, C=0, ordering="antinormal"))


def test_export_reports_csv(amplified):
    buf = io.StringIO()
    export_reports_csv([intensity_moments(amplified.moments, "sF"), squeeze(amplified.moments, "sF,iF")], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "modes,observable,value"
    assert lines[1].startswith("sF,mean_W,")
    assert any(line.startswith('"sF,iF",lambda,') for line in lines)


# ==== monte carlo ====
def test_husimi_covariance_of_vacuum():
    m = input_moments({})
    assert np.allclose(husimi_covariance(m, [0, 3]), np.eye(4) / 2)


def test_mc_agrees_with_thermal_closed_form():
    m = input_moments({"sF": {"n_ch": 2.0}})
    report = mc_oracle(m, "sF", n_samples=200_000, seed=7)
    assert abs(report.mean_W - 2) < 5 * report.stderr["mean_W"]
    assert abs(report.var_W - 4) < 5 * report.stderr["var_W"]
    assert abs(report.R_W - 2) < 5 * report.stderr["R_W"]


def test_mc_agrees_with_pair_formula(amplified):
    moments = propagate_second_moments(amplified.iomap, {"sF": {"xi": 0.8}, "iF": {"xi": -0.5j}})
    exact = intensity_moments(moments, "sF,iF")
    report = mc_oracle(moments, "sF,iF", n_samples=300_000, seed=11)
    assert report.n_samples == 300_000
    for key in ("mean_W", "var_W", "fano"):
        assert abs(getattr(report, key) - getattr(exact, key)) < 5 * report.stderr[key]


def test_mc_is_deterministic():
    m = input_moments({"sF": {"xi": 1, "r": 0.2}})
    first = mc_oracle(m, "sF", n_samples=70_000, seed=3)
    second = mc_oracle(m, "sF", n_samples=70_000, seed=3)
    assert first == second
    assert mc_oracle(m, "sF", n_samples=70_000, seed=4).mean_W != first.mean_W


def test_mc_rejects_unsamplable_state():
    zeros = np.zeros((6, 6), dtype=complex)
    bad = GaussianMoments(means=np.zeros(6), B=np.full(6, -2.0), C=np.zeros(6), D=zeros, Dbar=zeros)
    with pytest.raises(NonGaussianSampling):
        mc_oracle(bad, "sF", n_samples=10)
