import json

import pytest
from click.testing import CliRunner

import cli
from sweeps import SweepSpec
from sweeps.runner import SweepResult

TINY = {
    "name": "tiny",
    "config": {"L": 0.5, "K_F": 0.05},
    "boundary": {"A_pF0": 10},
    "solver": {"classical": "analytic"},
    "observables": ["lambda:sF,iF"],
    "sweep": [{"name": "A_pF", "start": 5, "stop": 10, "steps": 2}],
}


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def sweep_file(tmp_path):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(TINY))
    return path


def test_parameters(runner):
    result = runner.invoke(cli.pbg, ["parameters"])
    assert result.exit_code == 0
    names = result.output.split()
    assert "K_nl" in names
    assert "phi_sF" in names


def test_presets(runner):
    result = runner.invoke(cli.pbg, ["presets"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 16
    assert lines[0].startswith(" 1  [a, b, c]")


def test_help_mentions_units(runner):
    result = runner.invoke(cli.pbg, ["--help"])
    assert result.exit_code == 0
    assert "1e6 V/m" in result.output


def test_sweep_to_stdout(runner, sweep_file):
    result = runner.invoke(cli.pbg, ["sweep", str(sweep_file)])
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    assert lines[0] == "# pbg sweep: tiny"
    assert lines[3].startswith("A_pF,lambda[sF+iF],")
    assert len(lines) == 6


def test_sweep_to_file_with_plot(runner, sweep_file, tmp_path):
    out = tmp_path / "tiny.csv"
    result = runner.invoke(cli.pbg, ["sweep", str(sweep_file), "--out", str(out), "--plot"])
    assert result.exit_code == 0, result.stderr
    assert out.read_text().startswith("# pbg sweep: tiny")
    assert "tiny.csv" in (tmp_path / "tiny.py").read_text()


def test_invalid_sweep_file(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({**TINY, "observables": []}))
    result = runner.invoke(cli.pbg, ["sweep", str(path)])
    assert result.exit_code == 1
    assert result.stderr.startswith("error: 1 validation error in SweepSpec")

    path.write_text("{not json")
    result = runner.invoke(cli.pbg, ["sweep", str(path)])
    assert result.exit_code == 1
    assert result.stderr.startswith("error:")


def test_failed_rows_exit_nonzero(runner, tmp_path):
    path = tmp_path / "negative.json"
    path.write_text(json.dumps({**TINY, "sweep": [{"name": "L", "start": -1, "stop": 0.5, "steps": 2}]}))
    result = runner.invoke(cli.pbg, ["sweep", str(path)])
    assert result.exit_code == 1
    assert "row 0:" in result.stderr


def test_figure_range(runner):
    result = runner.invoke(cli.pbg, ["figure", "17"])
    assert result.exit_code == 2


def test_figure_writes_paths(runner, monkeypatch, tmp_path):
    calls = {}

    def fake_run_figure(figure, **kwargs):
        calls.update(kwargs, figure=figure)
        spec = SweepSpec.parse_obj({**TINY, "name": "figure-03-a"})
        return {"a": SweepResult(spec, [])}

    monkeypatch.setattr(cli, "run_figure", fake_run_figure)
    result = runner.invoke(cli.pbg, ["figure", "3", "--out", str(tmp_path), "--steps", "400", "--no-plot"])
    assert result.exit_code == 0, result.stderr
    assert result.stdout.strip().endswith("figure-03-a.csv")
    assert calls["figure"] == 3
    assert calls["steps"] == 400
    assert calls["plot"] is False


@pytest.mark.parametrize("passed, code", [(True, 0), (False, 2)])
def test_check_exit_status(runner, monkeypatch, passed, code):
    report = {
        "level": "fast",
        "passed": passed,
        "elapsed_s": 0.1,
        "checks": [{"name": "units and modes", "passed": passed, "value": None, "threshold": None, "detail": None}],
    }
    monkeypatch.setattr(cli, "run_checks", lambda level, seed: report)
    result = runner.invoke(cli.pbg, ["check", "--seed", "3"])
    assert result.exit_code == code
    assert json.loads(result.stdout) == report
    if not passed:
        assert "units and modes" in result.stderr
