"""Tests for API endpoints."""


class TestHealthEndpoint:
    """Tests for the health check endpoint."""

    def test_health_check(self, client):
        """Test that health check returns healthy status."""
        response = client.get("/api/health")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"

    def test_root(self, client):
        """The root lists the endpoints."""
        response = client.get("/")
        assert response.status_code == 200
        assert "kgroups" in response.json()["endpoints"]


class TestKGroupsEndpoint:
    """Tests for homotopy-group endpoints."""

    def test_vect_f2(self, client):
        """Vect(F2, 1) gives pi0 = Z and pi1 = Z/2."""
        response = client.post("/api/kgroups", json={"model": "vect", "q": 2, "maxdim": 1})
        assert response.status_code == 200
        data = response.json()
        assert data["pi0"] == [0]
        assert data["pi1"] == [2]
        assert data["eta"] == [[1]]

    def test_dual_numbers(self, client):
        """F2[eps] at rank 1 gives pi1 = (Z/2)^2."""
        response = client.post("/api/kgroups", json={"model": "dualnum", "base": "F2", "maxdim": 1})
        assert response.status_code == 200
        assert response.json()["pi1"] == [2, 2]

    def test_vect_needs_order(self, client):
        """The vect model needs q."""
        response = client.post("/api/kgroups", json={"model": "vect"})
        assert response.status_code == 422

    def test_unsupported_field(self, client):
        """F9 is rejected with 400."""
        response = client.post("/api/kgroups", json={"model": "vect", "q": 9})
        assert response.status_code == 400

    def test_abelian(self, client):
        """Invariant factors of Z/2 + Z."""
        response = client.post("/api/abelian", json={"ngens": 2, "relators": [[2, 0]]})
        assert response.status_code == 200
        data = response.json()
        assert data["invariant_factors"] == [2, 0]
        assert data["text"] == "Z/2 + Z"
        assert data["order"] is None

    def test_abelian_row_length(self, client):
        """Relator rows must match the generator count."""
        response = client.post("/api/abelian", json={"ngens": 2, "relators": [[2]]})
        assert response.status_code == 422


class TestDet3Endpoint:
    """Tests for the det3 endpoint."""

    def test_det3(self, client, det3_payload):
        """det3 of the t-twisted generator triangle."""
        response = client.post("/api/det3", json=det3_payload)
        assert response.status_code == 200
        data = response.json()
        assert data["det"] == "t"
        assert data["mod_squares"] == "t"
        assert data["acyclic"] is True

    def test_det3_bad_ring(self, client, det3_payload):
        """A plain field is rejected."""
        det3_payload["ring"] = "F2"
        response = client.post("/api/det3", json=det3_payload)
        assert response.status_code == 422


class TestVerifyEndpoint:
    """Tests for the verification endpoint."""

    def test_modes(self, client):
        """The modes suite passes on Vect(F2, 1)."""
        response = client.post(
            "/api/verify",
            json={"family": "modes", "spec": {"model": "vect", "q": 2}},
        )
        assert response.status_code == 200
        data = response.json()
        assert data["passed"] is True
        assert data["checked"] > 0

    def test_unknown_family(self, client):
        """Families outside the list fail validation."""
        response = client.post(
            "/api/verify",
            json={"family": "bogus", "spec": {"model": "vect", "q": 2}},
        )
        assert response.status_code == 422
