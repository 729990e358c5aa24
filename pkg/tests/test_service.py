"""HTTP surface: JSON schema, status codes, and report determinism.

Configuration problems (bad expressions, cost caps, dimension mismatches)
must come back as 400 with a human-readable detail string, while malformed
request bodies stay FastAPI's 422. Reports must be byte-identical across
calls except for the timing fields.
"""

import math

import pytest
from fastapi.testclient import TestClient

from cubeforms import __version__
from cubeforms.service import app, create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


REPORT_KEYS = {"version", "suite", "checks", "pass"}
CHECK_KEYS = {"name", "inputs", "values", "residual", "tolerance", "pass",
              "millis"}


def _strip_millis(report: dict) -> dict:
    out = dict(report)
    out["checks"] = [{k: v for k, v in c.items() if k != "millis"}
                     for c in report["checks"]]
    return out


# ---------------------------------------------------------------------------
# health and schema


def test_health(client):
    body = client.get("/health").json()
    assert body == {"status": "ok", "version": __version__}


def test_create_app_builds_independent_instances():
    other = create_app()
    assert other is not app
    with TestClient(other) as c:
        assert c.get("/health").status_code == 200


def test_verify_report_schema(client):
    resp = client.post("/verify", json={"suite": "combinatorics"})
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == REPORT_KEYS
    assert body["suite"] == "combinatorics"
    assert body["version"] == __version__
    assert body["pass"] is True
    assert body["checks"]
    for check in body["checks"]:
        assert set(check) == CHECK_KEYS
        assert check["residual"] <= check["tolerance"]
        assert check["pass"] is True
        assert check["millis"] >= 0


def test_verify_defaults_apply(client):
    body = client.post("/verify", json={"suite": "classical"}).json()
    assert body["pass"] is True
    assert all(c["pass"] for c in body["checks"])


def test_verify_is_deterministic_modulo_millis(client):
    payload = {"suite": "combinatorics", "max_n": 10, "seed": 3}
    first = client.post("/verify", json=payload).json()
    second = client.post("/verify", json=payload).json()
    assert _strip_millis(first) == _strip_millis(second)


@pytest.mark.parametrize("payload", [
    {"suite": "nope"},
    {"suite": "box", "order": 0},
    {"suite": "box", "order": 65},
    {"suite": "box", "max_n": 0},
    {"suite": "box", "seed": -1},
    {"suite": 3},
    {},
])
def test_verify_validation_is_422(client, payload):
    assert client.post("/verify", json=payload).status_code == 422


# ---------------------------------------------------------------------------
# demos


def test_demo_annulus(client):
    body = client.post("/demo", json={"name": "annulus"}).json()
    assert body["suite"] == "demo:annulus"
    assert body["pass"] is True
    names = [c["name"] for c in body["checks"]]
    assert any("area" in n for n in names)


def test_demo_unknown_name_is_422(client):
    assert client.post("/demo", json={"name": "torus"}).status_code == 422


# ---------------------------------------------------------------------------
# integrate


def test_integrate_plain_identity_area(client):
    resp = client.post("/integrate", json={
        "form": ["1"], "degree": 2, "ambient": 2})
    body = resp.json()
    assert resp.status_code == 200
    assert abs(body["value"] - 1.0) <= 1e-12
    assert body["checks"] == []
    assert body["pass"] is True


def test_integrate_annulus_area(client):
    resp = client.post("/integrate", json={
        "map": ["(1 + x0) * cos(2 * pi * x1)",
                "(1 + x0) * sin(2 * pi * x1)"],
        "form": ["1"], "degree": 2, "ambient": 2, "order": 24})
    assert abs(resp.json()["value"] - 3 * math.pi) <= 1e-10


def test_integrate_stokes_ledger(client):
    resp = client.post("/integrate", json={
        "form": ["-x1/2", "x0/2"], "degree": 1, "ambient": 2,
        "stokes": True})
    body = resp.json()
    assert body["pass"] is True
    check = body["checks"][0]
    assert check["name"] == "stokes-ledger"
    assert check["tolerance"] == 1e-7
    assert abs(body["value"] - 1.0) <= 1e-10
    assert len(check["values"]["faces"]) == 4


def test_integrate_box_chain(client):
    resp = client.post("/integrate", json={
        "form": ["-x1/2", "x0/2"], "degree": 1, "ambient": 2,
        "stokes": True,
        "boxes": [{"lo": [0.0, 0.0], "hi": [0.5, 1.0]},
                  {"lo": [0.5, 0.0], "hi": [1.0, 1.0]}]})
    body = resp.json()
    assert body["pass"] is True
    check = body["checks"][0]
    assert check["name"] == "box-chain-stokes"
    assert check["tolerance"] == 1e-9
    assert abs(body["value"] - 1.0) <= 1e-10
    assert len(check["values"]["terms"]) == 2


def test_integrate_cube_chain_plain(client):
    resp = client.post("/integrate", json={
        "form": ["1"], "degree": 2, "ambient": 2,
        "chain": [{"coeff": 2, "box": {"lo": [0.0, 0.0], "hi": [1.0, 1.0]}},
                  {"coeff": -1, "map": ["x0", "x1"]}]})
    body = resp.json()
    assert abs(body["value"] - 1.0) <= 1e-12
    assert body["checks"] == []


def test_integrate_cube_chain_stokes(client):
    resp = client.post("/integrate", json={
        "form": ["-x1/2", "x0/2"], "degree": 1, "ambient": 2, "stokes": True,
        "chain": [{"coeff": 1, "map": ["x0", "x1"]},
                  {"coeff": 3, "box": {"lo": [0.0, 0.0], "hi": [1.0, 1.0]}}]})
    body = resp.json()
    check = body["checks"][0]
    assert check["name"] == "cube-chain-stokes"
    assert body["pass"] is True
    assert abs(body["value"] - 4.0) <= 1e-10


@pytest.mark.parametrize("payload, fragment", [
    ({"form": ["1"], "degree": 2, "ambient": 9},
     "cost cap"),
    ({"form": ["x0 +"], "degree": 1, "ambient": 1},
     "end of input"),
    ({"form": ["1"], "degree": 3, "ambient": 2},
     "degree cannot exceed"),
    ({"form": ["1", "0", "0"], "degree": 2, "ambient": 3},
     "ambient == degree"),
    ({"form": ["1", "1"], "degree": 1, "ambient": 2,
      "boxes": [{"lo": [0.0, 0.0], "hi": [1.0, 1.0]}]},
     "only supported with stokes"),
    ({"form": ["1", "1"], "degree": 1, "ambient": 2, "stokes": True,
      "boxes": [{"lo": [0.0], "hi": [1.0]}]},
     "box of dimension 1"),
    ({"form": ["1"], "degree": 2, "ambient": 2,
      "chain": [{"coeff": 1, "map": ["x0", "x1"],
                 "box": {"lo": [0.0, 0.0], "hi": [1.0, 1.0]}}]},
     "map or a box"),
    ({"form": ["1"], "degree": 2, "ambient": 2,
      "chain": [{"coeff": 1}]},
     "map or a box"),
    ({"form": ["1", "1", "1"], "degree": 2, "ambient": 2},
     "coefficient"),
])
def test_integrate_config_errors_are_400(client, payload, fragment):
    resp = client.post("/integrate", json=payload)
    assert resp.status_code == 400
    assert fragment in resp.json()["detail"]


@pytest.mark.parametrize("payload", [
    {},                                          # form is required
    {"form": ["1"], "degree": -1, "ambient": 2},
    {"form": ["1"], "degree": 2, "ambient": 0},
    {"form": ["1"], "degree": 2, "ambient": 2, "order": 65},
    {"form": "1", "degree": 2, "ambient": 2},    # not a list
])
def test_integrate_validation_is_422(client, payload):
    assert client.post("/integrate", json=payload).status_code == 422


# ---------------------------------------------------------------------------
# parity endpoint


def test_check_parity(client):
    resp = client.post("/check-parity", json={"max_n": 8})
    body = resp.json()
    assert body["suite"] == "check-parity"
    assert body["pass"] is True
    assert {c["name"] for c in body["checks"]} >= {"sign-cancel-exhaustive"}


def test_check_parity_bounds(client):
    assert client.post("/check-parity",
                       json={"max_n": 0}).status_code == 422
    assert client.post("/check-parity",
                       json={"max_n": 65}).status_code == 422
