"""HTTP facade: routes, error mapping, verification suites, coverage."""

import inspect
import socket
import threading
import time
import warnings

import httpx

from dycktilings import bijections, bsum, paths, qpoly, tilings
from dycktilings.service import SUITE_ORDER, SURFACE_CASES, app, surface_rows

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

client = TestClient(app)


class TestHealth:
    def test_health(self):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestEnumerate:
    def test_paths(self):
        resp = client.post("/enumerate", json={"kind": "paths", "n": 3})
        assert resp.status_code == 200
        body = resp.json()
        assert body["kind"] == "paths"
        assert body["count"] == 5
        assert body["items"][0] == "UUUDDD"
        assert body["items"][-1] == "UDUDUD"

    def test_tilings(self):
        resp = client.post(
            "/enumerate", json={"kind": "tilings", "lower": "UDUD", "upper": "UUDD"}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["count"] == 1
        item = body["items"][0]
        assert item["tiles"] == [[[0, 1]]]
        assert (item["cells"], item["size"], item["norm"]) == (1, 1, 0)

    def test_matchings(self):
        resp = client.post("/enumerate", json={"kind": "matchings", "n": 2})
        assert resp.json()["items"] == [
            [[1, 2], [3, 4]],
            [[1, 3], [2, 4]],
            [[1, 4], [2, 3]],
        ]

    def test_hermite_histories(self):
        resp = client.post("/enumerate", json={"kind": "hermite", "path": "UUDD"})
        assert resp.json()["items"] == [
            {"path": "UUDD", "labels": [0, 0]},
            {"path": "UUDD", "labels": [1, 0]},
        ]

    def test_region_paths(self):
        resp = client.post(
            "/enumerate", json={"kind": "region-paths", "path": "UD", "a": 1, "b": 1}
        )
        assert resp.json()["items"] == [
            {"steps": "UR", "area_halves": 4},
            {"steps": "RU", "area_halves": 2},
        ]

    def test_unknown_kind(self):
        resp = client.post("/enumerate", json={"kind": "chairs", "n": 1})
        assert resp.status_code == 400
        assert "unknown enumeration kind" in resp.json()["detail"]

    def test_missing_parameter(self):
        resp = client.post("/enumerate", json={"kind": "paths"})
        assert resp.status_code == 400
        assert resp.json()["detail"] == "missing parameter: n"

    def test_capacity_maps_to_413(self):
        resp = client.post("/enumerate", json={"kind": "paths", "n": 9})
        assert resp.status_code == 413
        assert "exceeds the bound" in resp.json()["detail"]

    def test_capacity_bound_can_be_raised(self):
        resp = client.post("/enumerate", json={"kind": "paths", "n": 9, "max_n": 9})
        assert resp.status_code == 200
        assert resp.json()["count"] == 4862

    def test_invalid_body_is_422(self):
        resp = client.post("/enumerate", json={"kind": "paths", "n": "many"})
        assert resp.status_code == 422

    def test_domain_error_from_core(self):
        resp = client.post("/enumerate", json={"kind": "hermite", "path": "UDX"})
        assert resp.status_code == 400


class TestCompute:
    def test_bq_default_route(self):
        resp = client.post(
            "/compute", json={"kind": "bq", "path": "UDUD", "a": 0, "b": 0}
        )
        body = resp.json()
        assert body == {"kind": "bq", "value": "1 + q", "at_one": None}

    def test_bq_routes_agree(self):
        values = set()
        for route in ("brute", "closed", "recursive"):
            resp = client.post(
                "/compute",
                json={"kind": "bq", "path": "UD", "a": 1, "b": 1, "route": route},
            )
            values.add(resp.json()["value"])
        assert values == {"2*q + q^2"}

    def test_bq_eval_at_one(self):
        resp = client.post(
            "/compute",
            json={"kind": "bq", "path": "UDUD", "a": 0, "b": 0, "eval_q1": True},
        )
        assert resp.json()["at_one"] == 2

    def test_bq_unknown_route(self):
        resp = client.post(
            "/compute",
            json={"kind": "bq", "path": "UD", "a": 0, "b": 0, "route": "guess"},
        )
        assert resp.status_code == 400

    def test_moments(self):
        resp = client.post("/compute", json={"kind": "moments", "n": 2})
        assert resp.json()["value"] == "1 + p + q"
        resp = client.post(
            "/compute", json={"kind": "moments", "n": 3, "route": "matchings"}
        )
        assert resp.json()["value"] == (
            "1 + 2*p + 2*q + p^2 + 2*p*q + q^2 + p^3 + 2*p^2*q + 2*p*q^2 + q^3"
        )

    def test_touchard(self):
        resp = client.post(
            "/compute", json={"kind": "touchard", "n": 2, "eval_q1": True}
        )
        assert resp.json() == {"kind": "touchard", "value": "2 + q", "at_one": 3}

    def test_touchard_capacity(self):
        resp = client.post("/compute", json={"kind": "touchard", "n": 31})
        assert resp.status_code == 413

    def test_matrix(self):
        resp = client.post(
            "/compute", json={"kind": "matrix", "n": 2, "eval_q1": True}
        )
        body = resp.json()
        assert body["value"]["paths"] == ["UUDD", "UDUD"]
        assert body["value"]["matrix"] == [["1", "0"], ["p*q", "1"]]
        assert body["value"]["inverse"] == [["1", "0"], ["-p*q", "1"]]
        assert body["value"]["matches_formula"] is True
        assert body["value"]["product_is_identity"] is True
        assert body["value"]["signed_counts_match"] is True
        assert body["at_one"]["matrix"] == [[1, 0], [1, 1]]
        assert body["at_one"]["inverse"] == [[1, 0], [-1, 1]]

    def test_unknown_kind(self):
        resp = client.post("/compute", json={"kind": "weather", "n": 1})
        assert resp.status_code == 400


class TestVerify:
    def test_thm2_small(self):
        resp = client.post("/verify", json={"suite": "thm2", "n": 2})
        body = resp.json()
        assert body["suite"] == "thm2"
        assert body["ok"] is True
        assert body["failed"] == 0
        assert body["total"] == 8
        row = body["rows"][0]
        assert set(row) == {"check", "parameters", "lhs", "rhs", "equal"}

    def test_each_suite_passes_small(self):
        budgets = {
            "thm1": 2,
            "thm2": 2,
            "thm-gen": 1,
            "mpq-inverse": 2,
            "bijections": 3,
            "lemmas": 2,
            "moments": 3,
        }
        for suite in SUITE_ORDER:
            resp = client.post("/verify", json={"suite": suite, "n": budgets[suite]})
            body = resp.json()
            assert body["ok"] is True, (suite, body["failed"])
            assert body["total"] > 0

    def test_unknown_suite(self):
        resp = client.post("/verify", json={"suite": "vibes"})
        assert resp.status_code == 400


class TestSurface:
    def test_all_rows_pass(self):
        rows = surface_rows()
        assert len(rows) == len(SURFACE_CASES)
        for row in rows:
            assert row["equal"], (row["parameters"]["op"], row["lhs"], row["rhs"])

    def test_names_are_unique(self):
        names = [name for name, _, _ in SURFACE_CASES]
        assert len(set(names)) == len(names)

    def test_every_public_operation_is_exercised(self):
        # `verify all` must touch every public function of the core
        # modules: either a surface smoke row or one of the check-row
        # builders that the verify suites call directly
        surface_names = {name for name, _, _ in SURFACE_CASES}
        suite_builders = {
            "theorem_checks",
            "lemma_checks",
            "bijection_checks",
            "moment_checks",
            "mpq_checks",
        }
        covered = surface_names | suite_builders
        missing = []
        for module in (qpoly, paths, tilings, bijections, bsum):
            for name, obj in vars(module).items():
                if name.startswith("_"):
                    continue
                if not inspect.isfunction(obj):
                    continue
                if obj.__module__ != module.__name__:
                    continue
                if name not in covered:
                    missing.append("%s.%s" % (module.__name__, name))
        assert missing == []


class TestRealServer:
    def test_http_roundtrip(self):
        import uvicorn

        with socket.socket() as probe:
            probe.bind(("127.0.0.1", 0))
            port = probe.getsockname()[1]
        config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        try:
            base = "http://127.0.0.1:%d" % port
            resp = None
            for _ in range(200):
                try:
                    resp = httpx.get(base + "/health", timeout=1.0)
                    break
                except httpx.TransportError:
                    time.sleep(0.05)
            assert resp is not None, "server did not come up"
            assert resp.json() == {"status": "ok"}
            resp = httpx.post(
                base + "/compute", json={"kind": "touchard", "n": 2}, timeout=10.0
            )
            assert resp.status_code == 200
            assert resp.json()["value"] == "2 + q"
            resp = httpx.post(
                base + "/enumerate", json={"kind": "paths", "n": 9}, timeout=10.0
            )
            assert resp.status_code == 413
        finally:
            server.should_exit = True
            thread.join(timeout=10)
