import math

import pytest

import config

AMPLIFIER = {
    "config": {"L": 0.5, "K_F": 0.05},
    "boundary": {"A_pF0": 10},
    "solver": {"classical": "analytic"},
    "observables": ["lambda:sF,iF", "fano:pB"],
}


def test_index(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.data == b"PBG waveguide simulator"


def test_figure_list(client):
    response = client.get("/figures/")
    body = response.get_json()
    assert body["success"]
    assert [f["figure"] for f in body["data"]] == list(range(1, 17))
    assert body["data"][0]["panels"] == ["a", "b", "c"]


def test_figure_detail(client):
    body = client.get("/figures/6").get_json()
    assert body["data"]["base"]["solver"]["classical"] == "shooting"
    assert body["data"]["base"]["config"]["K_s"] == [5.0, 0.0]

    response = client.get("/figures/99")
    assert response.status_code == 400
    assert "unknown figure" in response.get_json()["error"]


def test_figure_run_limits(client, monkeypatch):
    monkeypatch.setattr(config, "API_MAX_POINTS", 10)
    response = client.post("/figures/1/run", json={"panels": ["a"]})
    assert response.status_code == 400
    assert "exceed the limit" in response.get_json()["error"]

    response = client.post("/figures/1/run", json={"panels": ["z"]})
    assert response.status_code == 404

    response = client.post("/figures/1/run", json={"steps": 10})
    assert response.status_code == 400


def test_parameters(client):
    body = client.get("/sweeps/parameters").get_json()
    assert "K_nl" in body["data"]


def test_sweep(client):
    spec = {**AMPLIFIER, "name": "api", "sweep": [{"name": "L", "start": 0.25, "stop": 0.5, "steps": 2}]}
    body = client.post("/sweeps/", json=spec).get_json()
    assert body["success"]
    assert body["data"]["failed"] == 0
    rows = body["data"]["rows"]
    assert len(rows) == 2
    assert rows[1]["lambda[sF+iF]"] == pytest.approx(2 / math.e)
    assert rows[1]["fano[pB]"] == "undefined"

    response = client.post("/sweeps/csv", json=spec)
    assert response.mimetype == "text/csv"
    assert response.data.decode().startswith("# pbg sweep: api")


def test_sweep_validation(client, monkeypatch):
    response = client.post("/sweeps/", json={**AMPLIFIER, "sweep": []})
    assert response.status_code == 400
    assert response.get_json()["error"].startswith("1 validation error in SweepSpec")

    response = client.post("/sweeps/", data="not json", content_type="text/plain")
    assert response.status_code == 400

    monkeypatch.setattr(config, "API_MAX_POINTS", 3)
    spec = {**AMPLIFIER, "sweep": [{"name": "L", "start": 0.25, "stop": 0.5, "steps": 4}]}
    response = client.post("/sweeps/", json=spec)
    assert response.status_code == 400
    assert "4 points exceed the limit of 3" in response.get_json()["error"]


def test_point_observables(client):
    body = client.post("/observables/", json=AMPLIFIER).get_json()
    data = body["data"]
    assert data["values"]["lambda[sF+iF]"] == pytest.approx(2 / math.e)
    assert data["error"] is None
    assert data["cond_ubb"] == pytest.approx(1)

    response = client.post("/observables/", json={**AMPLIFIER, "config": {"L": -1}})
    assert response.status_code == 400


def test_point_table(client):
    data = client.post("/observables/table", json=AMPLIFIER).get_json()["data"]
    assert len(data["squeezing"]) == 21
    assert data["squeezing"]["sF"]["lambda"] == pytest.approx(math.cosh(1.0))
    assert data["means"]["pF"] == [0.0, 0.0]


def test_profile(client):
    data = client.post("/observables/profile", json={**AMPLIFIER, "points": 5}).get_json()["data"]
    assert data["provenance"] == "analytic"
    assert data["z"] == [0.0, 0.125, 0.25, 0.375, 0.5]
    assert data["amplitudes"]["pF"][0] == [10.0, 0.0]


def test_weak(client):
    data = client.post("/observables/weak", json=AMPLIFIER).get_json()["data"]
    assert data["integrals"]["I_pF"] == [pytest.approx(0.5), 0.0]
    assert data["lambda"]["sF,iF"] == pytest.approx(1.0)


def test_checks_level(client):
    response = client.get("/checks/?level=thorough")
    assert response.status_code == 400
