import asyncio
import json

import pytest
from fastapi.routing import APIRoute
from fastapi.testclient import TestClient

from plateau.config import Settings, get_settings
from plateau.main import app
from plateau.store.result_store import result_store


@pytest.fixture
def client():
    asyncio.run(result_store.clear())
    with TestClient(app) as test_client:
        yield test_client
    app.dependency_overrides.clear()


@pytest.fixture
def spec(specs_dir):
    def read(name):
        return json.loads((specs_dir / name).read_text())

    return read


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["budgets"]["max_field_size"] == get_settings().max_field_size
    assert body["budgets"]["search"] == get_settings().search_budget
    assert set(body["cache"]) == {"cached_specs", "cached_reports"}
    assert "X-Elapsed-Ms" in response.headers


class TestAnalyze:
    def test_classification(self, client, spec):
        response = client.post("/analyze", json=spec("weakly_regular_1_plateaued_f27.json"))
        assert response.status_code == 200
        plateau = response.json()["plateau"]
        assert plateau["r"] == 1
        assert plateau["regularity"] == "weakly_regular"
        assert plateau["epsilon"] == -1
        assert response.json()["walsh"]["spectrum"] is None

    def test_spectrum(self, client, spec):
        response = client.post("/analyze?spectrum=true", json=spec("linear_f27.json"))
        entries = response.json()["walsh"]["spectrum"]
        assert len(entries) == 27
        assert entries[1]["value"]["coeffs"] == [27, 0]

    def test_not_plateaued_is_reported(self, client, spec):
        response = client.post("/analyze", json=spec("not_plateaued_f8.json"))
        assert response.status_code == 200
        assert response.json()["plateau"] is None
        assert "distinct nonzero" in response.json()["error"]

    def test_results_are_cached(self, client, spec):
        payload = spec("regular_1_plateaued_f27.json")
        first = client.post("/analyze", json=payload).json()
        second = client.post("/analyze", json=payload).json()
        assert first == second
        entries = client.get("/analyses").json()
        assert len(entries) == 1
        assert entries[0]["hits"] == 1
        assert entries[0]["kinds"] == ["analysis"]

    def test_malformed_payload(self, client):
        response = client.post("/analyze", json={"p": 3, "m": 3, "modulus": [1, 2, 0, 1], "terms": [["y", 2]]})
        assert response.status_code == 422
        assert response.json()["error"] == "spec_parse_error"

    def test_engine_input_error(self, client):
        payload = {"p": 3, "m": 2, "modulus": [1, 2, 1], "terms": [["1", 2]]}
        response = client.post("/analyze", json=payload)
        assert response.status_code == 422
        assert response.json()["error"] == "reducible"


class TestCodes:
    def test_three_weight_code(self, client, spec):
        response = client.post("/codes", json=spec("ternary_three_weight_f27.json"))
        assert response.status_code == 200
        body = response.json()
        assert body["parameters"] == "[26,4]_3"
        assert body["enumerator"] == "1+16y^15+62y^18+2y^24"
        assert (body["w_min"], body["w_max"]) == (15, 24)

    def test_budget(self, client, spec):
        app.dependency_overrides[get_settings] = lambda: Settings(enumeration_budget=10)
        response = client.post("/codes", json=spec("binary_3_plateaued_f32.json"))
        assert response.status_code == 413
        assert response.json()["error"] == "budget_exceeded"


def test_verify(client, spec):
    response = client.post("/verify", json=spec("binary_3_plateaued_f32.json"))
    assert response.status_code == 200
    body = response.json()
    assert body["passed"]
    assert body["diff"]["matches"]
    assert {c["name"] for c in body["checks"]} >= {"parseval", "tables", "walsh_weight_formula"}


class TestTables:
    def test_odd_even(self, client):
        response = client.get("/tables", params={"p": 3, "m": 3, "r": 1, "epsilon": -1})
        assert response.status_code == 200
        rows = {row["w"]: row["A"] for row in response.json()["rows"]}
        assert rows == {0: 1, 15: 16, 18: 62, 24: 2}
        assert response.json()["total"] == 81

    def test_balanced(self, client):
        response = client.get("/tables", params={"p": 3, "m": 3, "r": 1, "epsilon": -1, "balanced": True})
        rows = {row["w"]: row["A"] for row in response.json()["rows"]}
        assert rows[15] == 12 and rows[24] == 6

    def test_parity_violation(self, client):
        response = client.get("/tables", params={"p": 2, "m": 4, "r": 1})
        assert response.status_code == 422
        assert response.json()["error"] == "parity_violation"

    def test_bad_epsilon(self, client):
        response = client.get("/tables", params={"p": 3, "m": 3, "r": 1, "epsilon": 2})
        assert response.json()["error"] == "range_violation"

    def test_malformed_query_is_not_a_spec_error(self, client):
        response = client.get("/tables", params={"p": "abc", "m": 3, "r": 1})
        assert response.status_code == 422
        assert response.json()["error"] == "invalid_request"


def test_every_route_is_documented():
    routes = [route for route in app.routes if isinstance(route, APIRoute)]
    assert routes
    assert all(route.endpoint.__doc__ for route in routes)


def test_settings_carry_only_used_fields():
    assert "debug" not in Settings.model_fields
