"""HTTP surface: endpoints, wire formats, error mapping."""

import json

import pytest
from fastapi.testclient import TestClient

from gnskit.service.app import create_app

EX_QS = {"d": 2, "gaps": [[1, 0], [2, 0], [0, 1], [1, 1], [2, 2], [1, 3]]}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_version(client):
    r = client.get("/version")
    assert r.status_code == 200
    assert r.json()["name"] == "gnskit"


def test_analyze(client):
    r = client.post("/analyze", json={"gap_set": EX_QS})
    assert r.status_code == 200
    body = r.json()
    assert body["pseudo_frobenius"] == [[1, 3], [2, 2]]
    assert body["frobenius_allowable"] == [[1, 3], [2, 2]]
    assert body["classification"]["quasiSymmetric"] is True
    assert body["classification"]["quasiIrreducible"] is True
    assert body["type_bounds"] is None
    assert body["tool"]["name"] == "gnskit"
    assert body["input"] == {"d": 2, "gaps": sorted(EX_QS["gaps"])}


def test_analyze_explain_and_order(client):
    r = client.post(
        "/analyze",
        json={"gap_set": {"d": 1, "gaps": [[1], [2], [4], [5]]}, "explain": True,
              "order_gap": [1]},
    )
    assert r.status_code == 200
    body = r.json()
    assert body["classification"]["isFrobenius"] is True
    assert body["type_bounds"]["t"] == 2
    assert body["witnesses"]["tSetComplement"] == [[2]]
    assert body["frobenius_gap_under_order"] == {
        "order": {"type": "maximal-gap", "h": [1]},
        "gap": [5],
    }


def test_analyze_invalid_gap_set(client):
    r = client.post("/analyze", json={"gap_set": {"d": 2, "gaps": [[1, 1]]}})
    assert r.status_code == 422
    assert r.json()["kind"] == "ClosureViolation"


def test_enumerate(client):
    r = client.post("/enumerate", json={"F": [1, 1]})
    assert r.status_code == 200
    assert r.json()["count"] == 3
    r = client.post("/enumerate", json={"F": [3], "list_sets": True})
    assert [g["gaps"] for g in r.json()["gap_sets"]] == [
        [[1], [2], [3]],
        [[1], [3]],
    ]


def test_enumerate_limit(client):
    r = client.post("/enumerate", json={"F": [99]})
    assert r.status_code == 400
    assert r.json()["kind"] == "LimitExceeded"
    r = client.post("/enumerate", json={"F": [5, 5], "limit": 36})
    assert r.status_code == 200


def test_construct(client):
    r = client.post("/construct", json={"F": [1, 1, 1], "Z": [[1, 1, 0]]})
    assert r.status_code == 200
    assert r.json()["frobenius_gap"] == [1, 1, 1]
    r = client.post("/construct", json={"F": [1, 1, 1], "Z": [[1, 1, 1]]})
    assert r.status_code == 422
    assert r.json()["kind"] == "ZNotInC"
    r = client.post(
        "/construct", json={"F": [1, 1, 1, 1, 1], "d5": True, "X": [[1, 1, 1, 0, 0]]}
    )
    assert r.json()["frobenius_gap"] == [1, 1, 1, 1, 1]


def test_bounds_endpoints(client):
    r = client.post("/bounds/sandwich", json={"F": [2, 2]})
    assert r.status_code == 200
    assert r.json()["report"]["exact"] == 16
    r = client.post("/bounds/constants", json={"dmax": 3})
    rows = r.json()["rows"]
    assert [row["d"] for row in rows] == [1, 2, 3]
    assert abs(rows[0]["a_d"] - 1.4142) < 2e-4
    r = client.post("/bounds/lpf", json={"P": [1], "F": [3]})
    body = r.json()
    assert body["good_subsets"] == 8
    assert body["graph"]["paths"] == [4]


def test_verify_endpoint(client):
    r = client.post(
        "/verify", json={"boxes": [[6]], "seed": 0, "axiom_samples": 100}
    )
    assert r.status_code == 200
    assert r.json()["passed"] is True


def test_byte_identical_across_threads(client):
    payloads = []
    for threads in (1, 4, 8):
        r = client.post("/enumerate", json={"F": [2, 3], "threads": threads})
        payloads.append(json.dumps({k: v for k, v in r.json().items() if k != "input"},
                                   sort_keys=True))
    assert payloads[0] == payloads[1] == payloads[2]
