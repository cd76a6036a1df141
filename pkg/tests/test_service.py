"""HTTP surface: routes, schemas, and error codes."""

import pytest
from fastapi.testclient import TestClient

from taulink import __version__
from taulink.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_coeffs_table(client):
    r = client.get("/coeffs/a", params={"count": 2})
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "a"
    assert body["count"] == 2
    assert body["values"] == [["1", "2/3"], ["2", "-1/12"]]


def test_coeffs_errors(client):
    assert client.get("/coeffs/zz", params={"count": 2}).status_code == 404
    assert client.get("/coeffs/a", params={"count": 0}).status_code == 422
    assert client.get("/coeffs/a").status_code == 422  # count required


def test_quadratic_tables(client):
    r = client.get("/quadratic/Q", params={"cutoff": 4})
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "Q"
    assert body["min_index"] == 1
    assert body["cutoff"] == 4
    assert [1, 1, "-1/12"] in body["coeffs"]
    r2 = client.get("/quadratic/QB", params={"cutoff": 2})
    assert r2.status_code == 200
    assert [0, 0, "-1/12"] in r2.json()["coeffs"]


def test_quadratic_errors(client):
    assert client.get("/quadratic/Q", params={"cutoff": 1}).status_code == 422
    assert client.get("/quadratic/zz", params={"cutoff": 3}).status_code == 404


def test_series_endpoint(client):
    r = client.get("/series/f", params={"order": 6})
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "f"
    assert body["order"] == 6
    assert body["series"]["top"] == 1
    assert ["1", "1"] in body["series"]["coeffs"]
    assert ["0", "2/3"] in body["series"]["coeffs"]
    assert body["text"].startswith("z + 2/3")


def test_series_errors(client):
    assert client.get("/series/zz", params={"order": 5}).status_code == 404
    assert client.get("/series/theta", params={"order": 0}).status_code == 422


def test_verify_single_suite(client):
    r = client.post("/verify/prop-quadratic",
                    json={"u_max": 2, "weight_max": 6, "order": 8})
    assert r.status_code == 200
    body = r.json()
    assert body["mismatches"] == []
    assert body["checked"] >= 1
    assert set(body["window"]) == {"u_max", "weight_max"}
    r2 = client.post("/verify/thm1",
                     json={"u_max": 2, "weight_max": 6, "order": 8})
    assert r2.status_code == 200
    body2 = r2.json()
    assert body2["mismatches"] == []
    assert body2["window"] == {"u_max": 2, "weight_max": 6}


def test_verify_all(client):
    r = client.post("/verify/all",
                    json={"u_max": 2, "weight_max": 6, "order": 8})
    assert r.status_code == 200
    body = r.json()
    assert body["mismatches"] == []
    assert len(body["suites"]) == 12
    assert all(s["mismatches"] == [] for s in body["suites"])


def test_verify_errors(client):
    assert client.post("/verify/zz", json={}).status_code == 404
    assert client.post("/verify/thm1",
                       json={"u_max": 0}).status_code == 422


def test_fk_dump(client):
    r = client.post("/fk", json={"weight_bound": 6})
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "fk"
    assert body["weight_bound"] == 6
    terms = {(t["u"], tuple(map(tuple, t["vars"]))): t["coeff"]
             for t in body["t_log"]["terms"]}
    assert terms[(0, ((0, 3),))] == "1/6"
    assert terms[(0, ((1, 1),))] == "1/24"
    assert "1/6*t0^3" in body["t_text"]
    assert "1/6*q1^3" in body["q_text"]


def test_fh_dump(client):
    r = client.post("/fh", json={"u_max": 2, "weight_max": 6,
                                 "margin_extra": 0})
    assert r.status_code == 200
    body = r.json()
    assert body["name"] == "fh"
    assert body["window"] == {"u_max": 2, "weight_max": 6}
    assert body["weight_bound"] == 9  # margin rule applied upstream
    terms = {(t["u"], tuple(map(tuple, t["vars"]))): t["coeff"]
             for t in body["t_log"]["terms"]}
    assert terms[(2, ((0, 1),))] == "-1/24"
    q_terms = {(t["u"], tuple(map(tuple, t["vars"]))): t["coeff"]
               for t in body["q_log"]["terms"]}
    assert q_terms[(1, ((2, 1),))] == "1/12"
    assert (2, ((1, 1),)) not in q_terms  # exact cancellation
