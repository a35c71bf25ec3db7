import pytest
from fastapi.testclient import TestClient

from edgedeform.service.app import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_rigid_endpoint(client):
    r = client.post("/rigid", json={"graph": {"family": "cycle:6"}})
    assert r.status_code == 200
    assert r.json() == {"rigid": True, "criterion": "local", "witness": None}
    r = client.post("/rigid", json={"graph": {"family": "cycle:5"}})
    body = r.json()
    assert body["rigid"] is False and body["witness"]["kind"] == "edge"


def test_rigid_indep_and_no456(client):
    r = client.post("/rigid-indep", json={"graph": {"family": "cycle:6"}})
    assert r.json()["rigid"] is True
    r = client.post("/rigid-no456", json={"graph": {"family": "path:4"}})
    assert r.json()["rigid"] is False
    r = client.post("/rigid-no456", json={"graph": {"family": "cycle:5"}})
    assert r.status_code == 422


def test_t1_endpoint(client):
    r = client.post("/t1", json={"graph": {"text": "a b\n"}})
    assert r.status_code == 200
    body = r.json()
    assert body["counts"]["nontrivial"] == 1
    (nontrivial,) = [h for h in body["homs"]
                     if h["classification"]["status"] == "nontrivial"]
    assert nontrivial["kind"] == "edge"
    assert nontrivial["lambda"] == "1"
    assert nontrivial["images"] == {"a*b": "1"}
    assert nontrivial["degree"] == -2


def test_t2_endpoint(client):
    r = client.post("/t2", json={"graph": {"family": "cycle:4"}})
    body = r.json()
    assert body["vanishes"] is False
    assert body["witness"] == {"edge": ["a0", "a1"], "L_a": ["a3"], "L_b": [],
                               "lambda": "1", "x": "a2"}
    r = client.post("/t2", json={"graph": {"family": "cycle:3"}})
    assert r.status_code == 422
    assert r.json()["kind"] == "TriangleFoundError"


def test_parse_errors_are_400(client):
    r = client.post("/t1", json={"graph": {"text": "a\n"}})
    assert r.status_code == 400
    assert r.json()["kind"] == "ParseError"
    r = client.post("/t1", json={"graph": {"family": "cycle:2"}})
    assert r.status_code == 400


def test_request_validation(client):
    r = client.post("/t1", json={"graph": {}})
    assert r.status_code == 422  # pydantic validation: no source given
    r = client.post("/t1", json={"graph": {"text": "a b", "family": "cycle:3"}})
    assert r.status_code == 422


def test_separations_and_separate(client):
    r = client.post("/separations", json={"graph": {"family": "cycle:3"}})
    body = r.json()
    assert body["separable"] is True
    assert {row["vertex"] for row in body["vertices"]} == {"a0", "a1", "a2"}

    r = client.post("/separate", json={
        "graph": {"family": "cycle:3"},
        "vertex": "a0", "side_a": ["a1"], "side_b": ["a2"]})
    body = r.json()
    assert body["fresh_vertex"] == "a0'sep"
    assert ["a2", "a0'sep"] in body["graph"]["edges"]

    r = client.post("/separate", json={
        "graph": {"family": "cycle:4"},
        "vertex": "a0", "side_a": ["a1"], "side_b": ["a3"]})
    assert r.status_code == 422
    assert r.json()["kind"] == "NotASeparationPairError"


def test_polarize_and_inseparable(client):
    r = client.post("/polarize", json={"graph": {"text": "a a\na b\n"}})
    body = r.json()
    assert body["fresh_vertices"] == ["a'pol"]
    assert ["a", "a'pol"] in body["graph"]["edges"]
    r = client.post("/inseparable", json={"graph": {"family": "cycle:4"}})
    assert r.json() == {"verdict": True}


def test_oracle_endpoints(client):
    r = client.post("/oracle/t1", json={"graph": {"family": "cycle:5"},
                                        "window": [-2, 0]})
    body = r.json()
    assert body["kind"] == "t1"
    by_c = {row["c"]: row for row in body["degrees"]}
    assert by_c[-1]["cohomology_dim"] == 5
    assert "certified" in body["note"]

    r = client.post("/oracle/t2", json={"graph": {"family": "cycle:4"},
                                        "window": [-3, 0],
                                        "check_generation": True})
    body = r.json()
    by_c = {row["c"]: row for row in body["degrees"]}
    assert by_c[-2]["hom_dim"] == 8
    assert by_c[-2]["cohomology_dim"] == 4
    assert all(row["generation_ok"] for row in body["degrees"])


def test_regularity_endpoint(client):
    r = client.post("/regularity", json={"graph": {"family": "cycle:3"},
                                         "degree_bound": 4})
    body = r.json()
    assert body["all_regular"] is True
    assert len(body["rows"]) == 3


def test_census_endpoint(client):
    r = client.post("/census", json={
        "graphs": [{"family": "cycle:3..6"}, {"family": "letterplace2:chain:3"}],
        "checks": ["rigid", "rigid-indep", "t2", "oracle-t1"]})
    body = r.json()
    assert body["mismatches"] == 0
    rows = {row["name"]: row for row in body["rows"]}
    assert rows["cycle:4"]["rigid"] is True
    assert rows["cycle:5"]["rigid"] is False
    assert rows["cycle:4"]["t1_window_zero"] is True
    assert rows["cycle:3"]["t2_vanishes"] is None  # triangle: criterion absent
    assert rows["letterplace2:chain:3"]["t2_vanishes"] is False
    r = client.post("/census", json={"graphs": [{"family": "cycle:3"}],
                                     "checks": ["bogus"]})
    assert r.status_code == 400
