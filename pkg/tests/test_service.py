import numpy as np
import pytest
from fastapi.testclient import TestClient

import geamkit as gk
from geamkit import serialize
from geamkit.service import create_app

from conftest import SQRT5


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture
def mub_family_doc():
    return serialize.geam_to_dict(gk.mub_geam(2))


@pytest.fixture
def reference_family_doc(two_line_geam):
    return serialize.geam_to_dict(two_line_geam)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


class TestConstruct:
    def test_equal_overlap_build(self, client):
        response = client.post("/construct", json={"d": 2, "sizes": [2, 3], "eta": 0.25})
        assert response.status_code == 200
        data = response.json()
        assert data["classification"] == "overcomplete"
        assert data["rank"] == 4
        assert data["fitted"]["trace"][0] == pytest.approx(SQRT5 * (3 - SQRT5) / 4, abs=1e-12)
        assert data["family"]["gammas"][0] == pytest.approx(SQRT5 * (3 - SQRT5) / 4, abs=1e-12)

    def test_mub_build(self, client):
        response = client.post("/construct", json={"d": 3, "mub": True})
        assert response.status_code == 200
        data = response.json()
        assert data["element_count"] == 12
        assert data["fitted"]["cross_ratio"] == pytest.approx(1 / 3, abs=1e-10)

    def test_t_list_with_policies(self, client):
        base = {"d": 2, "sizes": [2, 3], "t_list": [0.9, 0.5]}
        uniform = client.post("/construct", json={**base, "weight_policy": "uniform"})
        assert uniform.json()["family"]["gammas"] == pytest.approx([0.5, 0.5])
        explicit = client.post("/construct", json={**base, "weights": [0.3, 0.7]})
        assert explicit.json()["family"]["gammas"] == pytest.approx([0.3, 0.7])
        default = client.post("/construct", json=base)
        assert default.json()["family"]["gammas"] == pytest.approx([0.4, 0.6])

    def test_size_mismatch_is_400(self, client):
        response = client.post("/construct", json={"d": 2, "sizes": [2, 2], "eta": 0.25})
        assert response.status_code == 400
        data = response.json()
        assert data["error"] == "SizeMismatch"
        assert data["exit_code"] == 2

    def test_builder_exclusivity(self, client):
        response = client.post(
            "/construct", json={"d": 2, "sizes": [2, 3], "eta": 0.25, "mub": True}
        )
        assert response.status_code == 400

    def test_infeasible_mixing_reports_not_positive(self, client):
        response = client.post(
            "/construct", json={"d": 2, "sizes": [2, 3], "t_list": [0.9, 0.9]}
        )
        assert response.status_code == 400
        data = response.json()
        assert data["error"] == "NotPositive"
        assert data["exit_code"] == 1

    def test_validation_error_is_422(self, client):
        response = client.post("/construct", json={"sizes": [2, 3]})
        assert response.status_code == 422


class TestVerify:
    def test_constructed_family_passes(self, client, reference_family_doc):
        response = client.post("/verify", json={"family": reference_family_doc})
        assert response.status_code == 200
        data = response.json()
        assert data["passed"] is True
        assert data["rank"] == 4
        assert data["classification"] == "overcomplete"
        assert data["count_equality"] is True
        assert data["fitted"]["square_ratio"] == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_tampered_hermiticity_is_parse_error(self, client, reference_family_doc):
        bad = reference_family_doc.copy()
        bad["elements"] = [
            [m.copy() for m in line] for line in reference_family_doc["elements"]
        ]
        bad["elements"][0][0] = dict(bad["elements"][0][0])
        entries = [row[:] for row in bad["elements"][0][0]["entries"]]
        entries[0][1] = [0.5, 0.0]
        bad["elements"][0][0]["entries"] = entries
        response = client.post("/verify", json={"family": bad})
        assert response.status_code == 400
        assert response.json()["error"] == "ParseError"

    def test_deficient_family_fails(self, client, trine_pair_geam):
        doc = serialize.geam_to_dict(trine_pair_geam)
        response = client.post("/verify", json={"family": doc})
        data = response.json()
        assert data["passed"] is False
        assert data["rank"] == 3
        assert data["classification"] == "deficient"


class TestDesignCheck:
    def test_mub_certificate(self, client, mub_family_doc):
        response = client.post("/design-check", json={"family": mub_family_doc})
        data = response.json()
        assert data["passed"] is True
        assert data["direct"]["kappa_plus"] == pytest.approx(1 / 9, abs=1e-12)
        assert data["closed_form"]["kappa_minus"] == pytest.approx(1 / 9, abs=1e-12)
        assert data["kappa_agreement"] <= 1e-9

    def test_nondesign_family(self, client, reference_family_doc):
        response = client.post("/design-check", json={"family": reference_family_doc})
        data = response.json()
        assert data["passed"] is False
        assert data["closed_form"] is None
        assert "not constant" in data["closed_form_error"]


class TestTomo:
    def test_random_state_deterministic(self, client, mub_family_doc):
        payload = {
            "family": mub_family_doc,
            "random_rank": 1,
            "random_seed": 11,
            "shots": 2000,
            "seed": 4,
        }
        first = client.post("/tomo", json=payload).json()
        second = client.post("/tomo", json=payload).json()
        assert first == second
        assert first["trace_distance"] <= 1e-10
        assert first["ioc_closed"]["c"] == pytest.approx(first["ioc_exact"], abs=1e-10)

    def test_explicit_state(self, client, mub_family_doc):
        state = serialize.matrix_to_dict(np.diag([1.0, 0.0]).astype(complex))
        response = client.post("/tomo", json={"family": mub_family_doc, "state": state})
        data = response.json()
        assert data["ioc_exact"] == pytest.approx(2 / 9, abs=1e-12)
        assert data["purity_true"] == pytest.approx(1.0, abs=1e-12)
        assert data["purity_from_probabilities"] == pytest.approx(1.0, abs=1e-12)
        assert data["p_empirical"] is None

    def test_nondesign_family_downgrades_closed_form(self, client, reference_family_doc):
        response = client.post(
            "/tomo", json={"family": reference_family_doc, "random_rank": 2, "random_seed": 1}
        )
        data = response.json()
        assert data["ioc_closed"] is None
        assert "skipped" in data["ioc_closed_warning"]
        assert data["purity_from_probabilities"] == pytest.approx(
            data["purity_true"], abs=1e-10
        )

    def test_state_and_random_conflict(self, client, mub_family_doc):
        state = serialize.matrix_to_dict(np.eye(2, dtype=complex) / 2.0)
        response = client.post(
            "/tomo",
            json={"family": mub_family_doc, "state": state, "random_rank": 1},
        )
        assert response.status_code == 400

    def test_empirical_block(self, client, mub_family_doc):
        response = client.post(
            "/tomo",
            json={
                "family": mub_family_doc,
                "random_rank": 1,
                "random_seed": 2,
                "shots": 10**5,
                "seed": 1,
            },
        )
        data = response.json()
        assert data["shots"] == 10**5
        assert len(data["p_empirical"]) == 3
        assert data["trace_distance_empirical"] <= 0.05
        assert data["ioc_empirical"] == pytest.approx(data["ioc_exact"], abs=0.01)
