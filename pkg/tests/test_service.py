import math

import pytest
from fastapi.testclient import TestClient

from cohnet.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


class TestSimulate:
    def test_single_splitter_half_angle(self, client):
        response = client.post(
            "/simulate",
            json={"topology": "chain", "angles": [math.pi / 2], "photons": 1},
        )
        assert response.status_code == 200
        data = response.json()
        assert data["modes"] == 2
        assert len(data["rows"]) == 2
        assert data["max_discrepancy"] < 1e-12
        by_occ = {tuple(r["occupation"]): r for r in data["rows"]}
        assert by_occ[(1, 0)]["re"] == pytest.approx(1 / math.sqrt(2), abs=1e-12)
        assert by_occ[(0, 1)]["im"] == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_zero_angle_passthrough(self, client):
        response = client.post(
            "/simulate", json={"topology": "chain", "angles": [0.0], "photons": 3}
        )
        data = response.json()
        assert len(data["rows"]) == 1
        assert data["rows"][0]["occupation"] == [3, 0]
        assert data["rows"][0]["re"] == pytest.approx(1.0)

    def test_parallel_two_blocks(self, client):
        response = client.post(
            "/simulate",
            json={"topology": "parallel", "blocks": 2, "angles": [0.8, 1.4], "photons": 2},
        )
        data = response.json()
        assert data["modes"] == 4
        assert len(data["rows"]) == 9  # (n+1)^2 product support
        assert data["max_discrepancy"] < 1e-12

    def test_singular_angle_is_client_error(self, client):
        response = client.post(
            "/simulate", json={"topology": "chain", "angles": [math.pi], "photons": 1}
        )
        assert response.status_code == 400
        assert "SingularAngle" in response.json()["detail"]

    def test_bad_parallel_split(self, client):
        response = client.post(
            "/simulate",
            json={"topology": "parallel", "blocks": 2, "angles": [0.8, 1.4, 0.3], "photons": 1},
        )
        assert response.status_code == 400


class TestConcurrence:
    def test_pure_point_value(self, client):
        response = client.post(
            "/concurrence/pure", json={"p": 2, "q": 1, "n": 1, "c": 0.5, "theta": 0.0}
        )
        data = response.json()
        assert data["closed_form"] == pytest.approx(0.6, abs=1e-12)
        assert data["numeric"] == pytest.approx(0.6, abs=1e-10)
        assert data["discrepancy"] < 1e-10

    def test_pure_requires_exactly_one_overlap_parameter(self, client):
        response = client.post(
            "/concurrence/pure", json={"p": 2, "q": 1, "n": 1, "theta": 0.0}
        )
        assert response.status_code == 400
        response = client.post(
            "/concurrence/pure",
            json={"p": 2, "q": 1, "n": 1, "c": 0.5, "varphi": 0.3, "theta": 0.0},
        )
        assert response.status_code == 400

    def test_pure_validates_ranges(self, client):
        response = client.post(
            "/concurrence/pure", json={"p": 2, "q": 1, "n": 1, "c": 1.5, "theta": 0.0}
        )
        assert response.status_code == 422  # pydantic bound
        response = client.post(
            "/concurrence/pure", json={"p": 2, "q": 2, "n": 1, "c": 0.5, "theta": 0.0}
        )
        assert response.status_code == 400  # q out of bipartition range

    def test_mixed_orthogonal_pair(self, client):
        response = client.post(
            "/concurrence/mixed", json={"p": 2, "n": 2, "c": 0.0, "theta": 1.0}
        )
        data = response.json()
        assert data["closed_form"] == pytest.approx(1.0, abs=1e-12)
        assert data["numeric"] == pytest.approx(1.0, abs=1e-9)
        assert data["lambdas"] is not None
        assert data["lambdas"][2] < 1e-9 and data["lambdas"][3] < 1e-9

    def test_mixed_zero_residual(self, client):
        response = client.post(
            "/concurrence/mixed",
            json={"p": 3, "n": 1, "c": 0.6, "c_rest": 0.0, "theta": 0.5},
        )
        data = response.json()
        assert data["closed_form"] == pytest.approx(0.0, abs=1e-12)
        assert data["numeric"] == pytest.approx(0.0, abs=1e-10)


class TestFigures:
    def test_fig3_with_reduced_resolution(self, client):
        response = client.post("/figures/fig3", json={"resolution": 7})
        data = response.json()
        assert data["columns"] == ["varphi", "n", "C11"]
        assert len(data["rows"]) == 7 * 5

    def test_unknown_figure(self, client):
        response = client.post("/figures/fig9", json={})
        assert response.status_code == 400


class TestSelftest:
    def test_subset_run_passes(self, client):
        response = client.post(
            "/selftest",
            json={"checks": ["point_value_theta0", "point_value_theta_pi", "contraction_limit"]},
        )
        data = response.json()
        assert data["passed"] is True
        # results come back in suite declaration order
        assert [c["name"] for c in data["checks"]] == [
            "contraction_limit",
            "point_value_theta0",
            "point_value_theta_pi",
        ]

    def test_unreachable_tolerance_fails(self, client):
        response = client.post(
            "/selftest",
            json={"tolerance": 1e-20, "checks": ["network_vs_closed_form"]},
        )
        data = response.json()
        assert data["passed"] is False
        assert data["checks"][0]["metric"] > 1e-20

    def test_unknown_check_rejected(self, client):
        response = client.post("/selftest", json={"checks": ["nonsense"]})
        assert response.status_code == 400
