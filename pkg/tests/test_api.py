import pytest
from fastapi.testclient import TestClient

from app import main
from app.core.config import settings
from app.main import app

TRIANGLE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
CROSS = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0], [3.0, 3.0]]


@pytest.fixture
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "version": settings.VERSION}


def test_requests_are_logged_by_route(client, monkeypatch):
    messages = []
    monkeypatch.setattr(main.logger, "info", messages.append)
    client.post("/depth", json={"points": TRIANGLE})
    assert messages[0] == "Depth kNN API call: POST /depth"
    assert messages[1].startswith("Depth kNN API answered POST /depth with 200 in ")


class TestDepthEndpoint:
    def test_triangle_vertex(self, client):
        response = client.post("/depth", json={"points": TRIANGLE, "queries": [[0.0, 0.0], [5.0, 5.0]]})
        assert response.status_code == 200
        body = response.json()
        assert body["depth"] == "halfspace"
        assert body["exact"] is True
        assert body["depths"] == pytest.approx([1 / 3, 0.0])

    def test_sample_depths_by_default(self, client):
        response = client.post("/depth", json={"points": CROSS, "depth": {"kind": "mahalanobis"}})
        assert len(response.json()["depths"]) == 5

    def test_dimension_mismatch_is_422(self, client):
        response = client.post("/depth", json={"points": TRIANGLE, "queries": [[0.0, 0.0, 0.0]]})
        assert response.status_code == 422
        assert response.json()["error"] == "DimensionMismatchError"

    def test_singular_scatter_is_409(self, client):
        line = [[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]
        response = client.post("/depth", json={"points": line, "depth": {"kind": "mahalanobis"}})
        assert response.status_code == 409
        assert response.json()["error"] == "SingularityError"

    def test_direction_floor_is_422(self, client):
        response = client.post("/depth", json={"points": TRIANGLE, "depth": {"directions": 10}})
        assert response.status_code == 422


class TestNeighborsEndpoint:
    def test_tied_group_is_returned_whole(self, client):
        response = client.post(
            "/neighbors", json={"points": CROSS, "query": [0.0, 0.0], "k": 1, "depth": {"kind": "mahalanobis"}}
        )
        assert response.status_code == 200
        body = response.json()
        assert body["k"] == 1
        assert body["realized_count"] == len(body["members"])
        assert sum(len(group["indices"]) for group in body["groups"]) == body["realized_count"]
        assert 4 not in body["members"]

    def test_beta(self, client):
        response = client.post("/neighbors", json={"points": CROSS, "query": [0.0, 0.0], "beta": 1.0})
        assert response.json()["realized_count"] == 5

    def test_k_and_beta_together(self, client):
        response = client.post("/neighbors", json={"points": CROSS, "query": [0.0, 0.0], "k": 1, "beta": 0.5})
        assert response.status_code == 422


class TestClassifyEndpoint:
    TRAIN = {
        "train_points": [[0.0, 0.0], [0.2, 0.1], [0.1, 0.3], [5.0, 5.0], [5.2, 4.9], [4.8, 5.1]],
        "train_labels": [0, 0, 0, 1, 1, 1],
    }

    def test_knn(self, client):
        response = client.post(
            "/classify", json={**self.TRAIN, "queries": [[0.1, 0.1], [5.0, 5.1]], "classifier": {"method": "knn", "k": 1}}
        )
        assert response.status_code == 200
        assert response.json() == {"classifier": "kNN(k=1)", "k": 1, "labels": [0, 1]}

    def test_k_chosen_by_leave_one_out(self, client):
        response = client.post(
            "/classify", json={**self.TRAIN, "queries": [[4.9, 5.0]], "classifier": {"method": "dknn"}}
        )
        body = response.json()
        assert body["labels"] == [1]
        assert body["k"] >= 1

    def test_lda_has_no_k(self, client):
        response = client.post("/classify", json={**self.TRAIN, "queries": [[0.0, 0.2]], "classifier": {"method": "lda"}})
        assert response.json()["k"] is None

    def test_single_class_is_422(self, client):
        payload = {
            "train_points": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            "train_labels": [1, 1, 1],
            "queries": [[0.0, 0.0]],
            "classifier": {"method": "knn", "k": 1},
        }
        response = client.post("/classify", json=payload)
        assert response.status_code == 422
