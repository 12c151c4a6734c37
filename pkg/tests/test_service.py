import json

import pytest
from fastapi.testclient import TestClient

from ahiagree import __version__, cli, report
from ahiagree.service import MAX_BODY_BYTES, create_app

PAIRS = [[2.0, 3.5], [7.0, 9.0], [20.0, 14.0], [40.0, 45.0], [9.0, 8.5]]


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestHealth:
    def test_ok(self, client):
        response = client.get("/api/v1/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok", "version": __version__}


class TestRankingFunction:
    def test_default_curve(self, client):
        response = client.get("/api/v1/ranking-function")
        assert response.status_code == 200
        doc = response.json()
        assert doc["config"] == {
            "thresholds": [5.0, 15.0, 30.0],
            "min": 0.5,
            "max": 1.5,
            "shape": "cubic",
            "samples": 601,
        }
        assert len(doc["x"]) == len(doc["values"]) == 601
        by_x = dict(zip(doc["x"], doc["values"]))
        assert by_x[5.0] == pytest.approx(1.5, abs=1e-12)
        assert by_x[7.5] == pytest.approx(0.75, abs=1e-12)

    def test_linear_shape(self, client):
        response = client.get("/api/v1/ranking-function?shape=linear")
        doc = response.json()
        by_x = dict(zip(doc["x"], doc["values"]))
        assert by_x[7.5] == pytest.approx(1.0, abs=1e-12)

    def test_too_few_samples_422(self, client):
        response = client.get("/api/v1/ranking-function?samples=2")
        assert response.status_code == 422
        assert "samples" in response.json()["error"]

    def test_bad_thresholds_422(self, client):
        response = client.get("/api/v1/ranking-function?thresholds=15,5,30")
        assert response.status_code == 422

    def test_bad_shape_422(self, client):
        response = client.get("/api/v1/ranking-function?shape=wavy")
        assert response.status_code == 422


class TestAnalyze:
    def test_valid_body(self, client):
        response = client.post("/api/v1/analyze", json={"pairs": PAIRS})
        assert response.status_code == 200
        doc = response.json()
        for key in report.AnalysisBundle.SECTION_KEYS:
            assert key in doc
        assert doc["data"]["n"] == 5

    def test_config_honored(self, client):
        body = {
            "pairs": [[0.5, 0.7], [2.0, 3.0], [7.0, 6.0], [12.0, 11.0]],
            "config": {"thresholds": [1, 5, 10], "shape": "linear", "ci": 0.9},
        }
        response = client.post("/api/v1/analyze", json=body)
        assert response.status_code == 200
        doc = response.json()
        assert doc["config"]["thresholds"] == [1.0, 5.0, 10.0]
        assert doc["config"]["ranking"]["shape"] == "linear"
        assert doc["config"]["ci_level"] == 0.9

    def test_negative_value_400_with_row(self, client):
        body = {"pairs": [[10.0, -1.0], [2.0, 3.0], [4.0, 5.0]]}
        response = client.post("/api/v1/analyze", json=body)
        assert response.status_code == 400
        doc = response.json()
        assert doc["row"] == 1
        assert "non-negative" in doc["error"]

    def test_short_pair_400(self, client):
        response = client.post(
            "/api/v1/analyze", json={"pairs": [[1.0], [2.0, 3.0], [4.0, 5.0]]}
        )
        assert response.status_code == 400
        assert response.json()["row"] == 1

    def test_too_few_pairs_400(self, client):
        response = client.post("/api/v1/analyze", json={"pairs": PAIRS[:2]})
        assert response.status_code == 400
        assert "at least 3" in response.json()["error"]

    def test_missing_pairs_400(self, client):
        assert client.post("/api/v1/analyze", json={}).status_code == 400

    def test_non_object_body_400(self, client):
        assert client.post("/api/v1/analyze", json=[1, 2, 3]).status_code == 400

    def test_malformed_json_400(self, client):
        response = client.post(
            "/api/v1/analyze",
            content=b"{not json",
            headers={"Content-Type": "application/json"},
        )
        assert response.status_code == 400

    def test_boolean_value_rejected(self, client):
        body = {"pairs": [[True, 1.0], [2.0, 3.0], [4.0, 5.0]]}
        response = client.post("/api/v1/analyze", json=body)
        assert response.status_code == 400
        assert response.json()["row"] == 1

    def test_descending_thresholds_422(self, client):
        body = {"pairs": PAIRS, "config": {"thresholds": [15, 5, 30]}}
        response = client.post("/api/v1/analyze", json=body)
        assert response.status_code == 422
        assert "strictly increasing" in response.json()["error"]

    def test_inverted_ranking_extremes_422(self, client):
        body = {
            "pairs": PAIRS,
            "config": {"ranking_min": 2.0, "ranking_max": 1.0},
        }
        assert client.post("/api/v1/analyze", json=body).status_code == 422

    def test_unknown_config_key_422(self, client):
        body = {"pairs": PAIRS, "config": {"bogus": 1}}
        response = client.post("/api/v1/analyze", json=body)
        assert response.status_code == 422
        assert "bogus" in response.json()["error"]

    def test_oversize_body_413(self, client):
        filler = [[1.0, 2.0]] * (MAX_BODY_BYTES // 10)
        response = client.post("/api/v1/analyze", json={"pairs": filler})
        assert response.status_code == 413

    def test_statelessness(self, client):
        first = client.post("/api/v1/analyze", json={"pairs": PAIRS})
        # interleave a different request, then repeat the first
        client.post(
            "/api/v1/analyze",
            json={"pairs": [[1.0, 2.0], [6.0, 7.0], [20.0, 22.0]]},
        )
        second = client.post("/api/v1/analyze", json={"pairs": PAIRS})
        assert first.content == second.content

    def test_matches_cli_report(self, client, tmp_path, capsys):
        csv = "reference,measured\n" + "\n".join(f"{r},{m}" for r, m in PAIRS) + "\n"
        path = tmp_path / "pairs.csv"
        path.write_text(csv)
        assert cli.main(["analyze", "--input", str(path)]) == 0
        cli_doc = json.loads(capsys.readouterr().out)
        service_doc = client.post("/api/v1/analyze", json={"pairs": PAIRS}).json()
        # the CLI parse records column names from the header; the service,
        # receiving bare pairs, uses the defaults. All numbers must agree.
        assert cli_doc["data"]["column_names"] == ["reference", "measured"]
        assert service_doc["data"]["column_names"] == ["reference", "measured"]
        assert cli_doc == service_doc


class TestCors:
    def test_allowed_origin_header(self, client):
        response = client.get(
            "/api/v1/health", headers={"Origin": "http://localhost:5173"}
        )
        assert response.headers.get("access-control-allow-origin") == (
            "http://localhost:5173"
        )

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("ALLOWED_ORIGINS", "https://example.test")
        other = TestClient(create_app())
        response = other.get(
            "/api/v1/health", headers={"Origin": "https://example.test"}
        )
        assert response.headers.get("access-control-allow-origin") == (
            "https://example.test"
        )
        plain = other.get(
            "/api/v1/health", headers={"Origin": "http://localhost:5173"}
        )
        assert "access-control-allow-origin" not in plain.headers
