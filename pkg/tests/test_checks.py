import numpy as np
import pytest

from lib.errors import SimulationException
from sweeps import checks, check_landmarks, list_presets


def test_cheap_checks_pass():
    for check in (checks.check_units, checks.check_identity, checks.check_determinism):
        outcome = check({})
        assert outcome["passed"], outcome


def test_working_point():
    point = checks.working_point(length=0.5)
    assert point.config.L == 0.5
    assert point.boundary.A_pF0 == 10
    assert point.solver.classical == "analytic"


def test_report_structure(monkeypatch):
    def broken(_):
        raise SimulationException("solver exploded")

    monkeypatch.setattr(checks, "CHECKS", ((checks.check_units, checks.LEVELS), (broken, ("fast",))))
    report = checks.run_checks("fast", seed=1)
    assert set(report) == {"level", "passed", "elapsed_s", "checks"}
    assert report["level"] == "fast"
    assert not report["passed"]
    units, failure = report["checks"]
    assert set(units) == {"name", "passed", "value", "threshold", "detail"}
    assert units["passed"]
    assert failure == {
        "name": "broken",
        "passed": False,
        "value": None,
        "threshold": None,
        "detail": "SimulationException: solver exploded",
    }

    full = checks.run_checks("full", seed=1)
    assert [c["name"] for c in full["checks"]] == ["units and modes"]
    assert full["passed"]


def test_unknown_level():
    with pytest.raises(ValueError):
        checks.run_checks("thorough")


def test_transfer_matrix_converges_at_fourth_order():
    errors, orders = checks.convergence_orders()
    assert errors[0] > errors[1] > errors[2] > 0
    assert all(3.5 <= order <= 4.5 for order in orders)
    assert checks.check_convergence({})["passed"]


def test_oracle_comparison_covers_every_label():
    errors = checks.oracle_errors(checks.ORACLE_EPSILON)
    assert len(errors) == 15
    assert {"sB,iB", "sB,pB", "pF,pB", "sF,iB"} <= set(errors)
    _, relative = errors["sF,iF"]
    assert 0 < relative <= checks.ORACLE_RTOL
    outcome = checks.check_oracle({})
    assert outcome["passed"], outcome
    assert outcome["detail"].startswith("15 labels")


def test_conservation_uses_random_structures():
    context = {"level": "fast", "point": checks.working_point(length=0.5), "rng": np.random.default_rng(3)}
    outcome = checks.check_conservation(context)
    assert outcome["passed"], outcome
    assert outcome["detail"].startswith(f"{checks.CONSERVATION_CONFIGS['fast'] + 1} structures")


def test_full_level_sample_sizes():
    assert checks.CONSERVATION_CONFIGS["full"] == 50
    assert checks.WEAK_STATES["full"] == 200
    assert checks.MC_STATES["full"] == 100
    assert checks.MC_SAMPLES["full"] == 10**6


@pytest.mark.slow
def test_figure_landmarks():
    outcomes = [o for preset in list_presets() for o in check_landmarks(preset)]
    assert len(outcomes) >= 6
    failed = [(o["figure"], o["observable"], o["at"], o["value"]) for o in outcomes if not o["passed"]]
    assert failed == []
