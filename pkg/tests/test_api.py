import json

import pytest
from fastapi.testclient import TestClient

from app.config import Settings, create_app
from app.models import ValidReport


@pytest.fixture
def client():
    with TestClient(create_app(Settings(max_domain=2))) as client:
        yield client


def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert "t45m" in body["systems"]
    assert body["default_system"] == "tm"


def test_parse(client):
    response = client.get("/api/parse", params={"formula": "A & B"})
    assert response.status_code == 200
    assert response.json()["expanded"] == "~(A -> ~B)"


def test_parse_error(client):
    response = client.get("/api/parse", params={"formula": "P(x))"})
    assert response.status_code == 400
    assert "offset 4" in response.json()["detail"]


def test_tables(client):
    body = client.get("/api/tables/tm").json()
    assert body["carrier"] == ["T+", "C+", "C-", "F-"]
    assert body["designated"] == ["T+", "C+"]
    box = {row["arg"]: row["result"] for row in body["box"]}
    assert box["T+"] == ["T+", "C+"]
    assert len(body["forall"]) == 15


def test_tables_unknown_system(client):
    assert client.get("/api/tables/s5").status_code == 400


def test_truthtable(client):
    response = client.post("/api/truthtable", json={"formula": "[]A", "premises": ["A"]})
    assert response.status_code == 200
    assert response.json()["verdict"] == "refuted"


def test_eval(client, fixtures_dir):
    structure = json.loads((fixtures_dir / "structures" / "contingently_true_universal.json").read_text())
    response = client.post("/api/eval", json={"formula": "[]forall x. P(x)", "structure": structure})
    assert response.status_code == 200
    body = response.json()
    assert body["results"][0]["values"] == ["C-", "F-"]
    assert body["true"] is False


def test_eval_shape_mismatch(client, fixtures_dir):
    structure = json.loads((fixtures_dir / "structures" / "triple_extension.json").read_text())
    response = client.post("/api/eval", json={"formula": "P(#0)", "structure": structure, "system": "tm"})
    assert response.status_code == 400


def test_valid(client):
    body = client.post("/api/valid", json={"formula": "x = y -> [](x = y)", "system": "tm-c"}).json()
    assert body["verdict"] == "countermodel"
    assert body["countermodel"]["structure"]["universe"] == 1

    body = client.post("/api/valid", json={"formula": "forall x. x = x"}).json()
    assert body["verdict"] == "valid-up-to-bound"
    assert body["max_universe"] == 2
    assert ValidReport.model_validate(body).model_dump() == body


def test_check_proof(client, fixtures_dir):
    derivation = json.loads((fixtures_dir / "proofs" / "generalized_premise.json").read_text())
    response = client.post("/api/check-proof", json=derivation)
    assert response.status_code == 200
    body = response.json()
    assert body["accepted"] is True
    assert body["dischargeable"] == {"0": False}


def test_check_proof_bad_arguments(client):
    derivation = {"system": "tm", "steps": [{"formula": "A", "rule": "mp", "args": [0]}]}
    response = client.post("/api/check-proof", json=derivation)
    assert response.status_code == 400
    assert "bad arguments" in response.json()["detail"]
