"""Tests for service layer."""

from app.schemas import AbelianRequest, ComplexData, Det3Request, KGroupsRequest, ModelSpec
from app.services import KGroupService, TriangulatedService, VerificationService


class TestKGroupService:
    """Tests for the presentation and homotopy-group service."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = KGroupService()

    def test_kgroups_vect_f2(self):
        """Vect(F2, 1) has pi0 = Z, pi1 = Z/2 and eta onto pi1."""
        report, error = self.service.kgroups(KGroupsRequest(model="vect", q=2, maxdim=1))
        assert error is None
        assert report.pi0 == [0]
        assert report.pi1 == [2]
        assert report.pi1_text == "Z/2"
        assert report.eta == [[1]]
        assert report.mode == "full"
        assert report.stable is None

    def test_kgroups_vect_f4(self):
        """Vect(F4, 1) has pi1 = Z/6."""
        report, error = self.service.kgroups(KGroupsRequest(model="vect", q=4, maxdim=1))
        assert error is None
        assert report.pi1 == [6]

    def test_level_zero_is_not_stable(self):
        """Level 0 misses pi0, so level 1 is not yet stable."""
        report, error = self.service.kgroups(KGroupsRequest(model="vect", q=2, maxdim=1, stable=True))
        assert error is None
        assert report.stable is False

    def test_field_model_finite(self):
        """The field model of F5 has pi1 = Z/4."""
        report, error = self.service.kgroups(KGroupsRequest(model="field", base="F5"))
        assert error is None
        assert report.pi1 == [4]
        assert report.eta == [[2]]

    def test_field_model_oracle(self):
        """F2(t) has no finite presentation."""
        report, error = self.service.kgroups(KGroupsRequest(model="field", base="F2(t)"))
        assert report is None
        assert "oracle" in error

    def test_odd_characteristic_triangles(self):
        """The triangle model refuses F3."""
        report, error = self.service.kgroups(KGroupsRequest(model="ftr", base="F3"))
        assert report is None
        assert error

    def test_present(self):
        """Presentations export their generators."""
        P, error = self.service.present(ModelSpec(model="vect", q=2), "plus")
        assert error is None
        data = P.to_json()
        assert len(data["E0"]) == 2

    def test_realize_incomplete(self):
        """Only two of the four pi1 elements of Vect(F3, 1) are hit at rank 1."""
        report, error = self.service.realize(ModelSpec(model="vect", q=3))
        assert error is None
        assert report.pi1 == [2, 2]
        assert len(report.found) == 2
        assert not report.complete

    def test_realize_bad_target(self):
        """A target class needs one coordinate per invariant factor."""
        report, error = self.service.realize(ModelSpec(model="vect", q=3), target=[1])
        assert report is None
        assert "coordinates" in error

    def test_cofiber_toy(self):
        """The x2 map has an exact six-term sequence."""
        reports, error = self.service.cofiber("toy", ModelSpec(model="vect", q=2))
        assert error is None
        assert len(reports) == 1
        assert reports[0].exact
        assert reports[0].groups["pi0_cof"] == [2]

    def test_cofiber_unknown(self):
        """Unknown morphism kinds are reported."""
        reports, error = self.service.cofiber("bogus", ModelSpec(model="vect", q=2))
        assert reports is None
        assert "bogus" in error

    def test_abelian(self):
        """Z/2 + Z/3 is reported as Z/6."""
        group, error = self.service.abelian(AbelianRequest(ngens=2, relators=[[2, 0], [0, 3]]))
        assert error is None
        assert group.invariant_factors == [6]
        assert group.order == 6


class TestTriangulatedService:
    """Tests for the det3 service."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = TriangulatedService()

    def test_det3(self, det3_payload):
        """det3 of the t-twisted generator triangle is t."""
        report, error = self.service.det3(Det3Request(**det3_payload))
        assert error is None
        assert report.acyclic
        assert report.det == "t"
        assert report.mod_squares == "t"
        assert report.distinguished is False

    def test_det3_not_exact(self):
        """A non-exact complex reports the failing spot."""
        request = Det3Request(
            ring="dual:F2",
            complex=ComplexData(ranks=[1, 1, 1], f=[["0"]], i=[["0"]], q=[["0"]]),
        )
        report, error = self.service.det3(request)
        assert error is None
        assert not report.acyclic
        assert report.defect_spot is not None
        assert report.det is None

    def test_det3_needs_dual_numbers(self, det3_payload):
        """Plain fields are refused."""
        det3_payload["ring"] = "F2"
        report, error = self.service.det3(Det3Request(**det3_payload))
        assert report is None
        assert "dual" in error

    def test_jordan(self):
        """Upper-triangular matrices over F3[eps] split."""
        report, error = self.service.jordan("dual:F3", [["2", "1"], ["0", "1"]])
        assert error is None
        assert report.passed


class TestVerificationService:
    """Tests for the relation suites."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = VerificationService()
        self.vect3 = ModelSpec(model="vect", q=3, maxdim=1)

    def test_unknown_family(self):
        """Unknown families are reported, not raised."""
        report, error = self.service.run("nope", self.vect3)
        assert report is None
        assert "nope" in error

    def test_three_by_three(self):
        """3x3 relations hold on Vect(F3, 1)."""
        report, error = self.service.run("3x3", self.vect3, count=10, seed=1)
        assert error is None
        assert report.passed
        assert report.notes["family"] == "3x3"

    def test_permutations_need_plus(self):
        """The permutation suite cannot run on the full presentation."""
        report, error = self.service.run("perm", self.vect3, mode="full")
        assert report is None
        assert "plus" in error

    def test_modes(self):
        """Reduced, full and plus presentations agree on Vect(F2, 1)."""
        report, error = self.service.run("modes", ModelSpec(model="vect", q=2))
        assert error is None
        assert report.passed
        assert report.notes["maps"] == ["reduced->full", "full->plus"]

    def test_octahedra(self):
        """The determinant identity holds on the rank-1 triangle model."""
        report, error = self.service.run("octahedra", ModelSpec(model="ftr", base="F2"), count=0)
        assert error is None
        assert report.passed

    def test_suspension_needs_triangles(self):
        """Free-module models have no suspension."""
        report, error = self.service.run("susp", self.vect3)
        assert report is None
        assert "suspension" in error
