"""Tests for the free-module, triangulated and units models."""

import logging

import pytest

from app.exceptions import SimplicialIdentityViolation, UnsupportedField
from app.models import (
    FieldUnitsOracle,
    SesCell,
    deligne_det_data,
    dualnum_model,
    field_model_sqm,
    ftr_model,
    vect_model,
)
from app.models.free_modules import canonical_quotient
from app.models.units import ses_determinant
from app.rings.fields import ring_from_descriptor
from app.rings.matrix import Mat
from app.simplicial.builder import build_presentation
from app.simplicial.det import verify_det_functor
from app.simplicial.interface import check_simplicial_identities
from app.sqm.presentation import SqmPresentation
from app.trifr.complexes import Periodic3Complex, is_distinguished
from app.trifr.octahedra import degeneracy


def zero_triangle():
    """R -0-> R -0-> R -0-> R over F2[eps], which is not exact."""
    R = ring_from_descriptor("dual:F2")
    zero = Mat.zero(R, 1, 1)
    return Periodic3Complex(zero, zero, zero)


class TestVectModel:
    """Tests for Vect(F_q) in small dimensions."""

    def test_cell_counts(self, vect_f2_1):
        """Vect(F2, 1) has two objects, two automorphisms and three exact sequences."""
        assert vect_f2_1.cell_counts() == {"objects": 2, "weak_equivalences": 2, "two_simplices": 3}

    def test_simplicial_identities(self, vect_f3_1):
        """Faces and degeneracies satisfy the simplicial identities."""
        assert check_simplicial_identities(vect_f3_1).passed

    def test_degeneracies(self, vect_f2_1):
        """s0 X is 0 >-> X ->> X and s1 X is X >-> X ->> 0."""
        s0, s1 = vect_f2_1.degeneracy1(1, 0), vect_f2_1.degeneracy1(1, 1)
        assert s0.dims == (0, 1, 1)
        assert s1.dims == (1, 1, 0)

    def test_ses_determinant(self):
        """The sequence k >-> k^2 ->> k with the obvious maps has determinant 1."""
        k = vect_model(3, 2).ring
        D = SesCell(Mat.from_ints(k, [[1], [0]]), Mat.from_ints(k, [[0, 1]]))
        assert ses_determinant(D) == k.one

    def test_negative_rank(self):
        """The maximal rank must be non-negative."""
        with pytest.raises(ValueError):
            vect_model(2, -1)

    def test_odd_prime_power(self):
        """F9 is not available."""
        with pytest.raises(UnsupportedField):
            vect_model(9, 1)

    def test_canonical_flags(self):
        """Vect(F2, 2) has 76 flags: one per pair of monos, plus every quotient when the outer mono is 1."""
        cat = vect_model(2, 2)
        simplices = list(cat.three_simplices())
        assert len(simplices) == 76
        assert all(T.r13 == canonical_quotient(T.i2 @ T.i) and T.r23 == canonical_quotient(T.i2) for T in simplices)
        assert check_simplicial_identities(cat).passed


class TestDualNumberModel:
    """Tests for free modules over k[eps]."""

    def test_name_and_objects(self):
        """Objects are the ranks 0..N."""
        cat = dualnum_model("F2", 1)
        assert list(cat.objects()) == [0, 1]
        assert "F2" in cat.name

    def test_needs_finite_base(self):
        """F2(t) is infinite."""
        with pytest.raises(UnsupportedField):
            dualnum_model("F2(t)", 1)


class TestTriangulatedModel:
    """Tests for the model of triangles over F2[eps]."""

    def test_rank_one_triangles(self, ftr_f2_1):
        """At rank 1 there are eight triangles, all distinguished."""
        triangles = list(ftr_f2_1.two_simplices())
        assert len(triangles) == 8
        assert all(is_distinguished(T) for T in triangles)

    def test_not_sampled_at_rank_one(self, ftr_f2_1):
        """Rank 1 is enumerated in full."""
        assert not ftr_f2_1.sampled
        assert not ftr_f2_1.truncated

    def test_odd_characteristic(self):
        """Sigma = 1 fails in odd characteristic."""
        with pytest.raises(UnsupportedField):
            ftr_model("F3", 1)

    def test_infinite_field(self):
        """F2(t) cannot be enumerated."""
        with pytest.raises(UnsupportedField):
            ftr_model("F2(t)", 1)

    def test_flavor(self):
        """Only the d and v flavors exist."""
        with pytest.raises(ValueError):
            ftr_model("F2", 1, "x")

    def test_malformed_octahedron(self, ftr_f2_1):
        """An octahedron with a face that is not a triangle is refused."""
        with pytest.raises(SimplicialIdentityViolation):
            ftr_f2_1.require_octahedron(degeneracy(zero_triangle(), 2))

    def test_malformed_witness(self):
        """Enumeration stops at a supplied octahedron whose faces are not triangles."""
        model = ftr_model("F2", 1, "d", witnesses=[degeneracy(zero_triangle(), 0)])
        with pytest.raises(SimplicialIdentityViolation):
            list(model.two_simplices())

    def test_equivalence_out_of_range(self, ftr_f2_1):
        """A full enumeration refuses equivalences ending outside it."""
        with pytest.raises(SimplicialIdentityViolation):
            list(ftr_f2_1.two_simplex_equivalences(zero_triangle()))

    def test_sampled_equivalences_warn(self, caplog):
        """A sampled model drops equivalences ending outside the sample and says so."""
        model = ftr_model("F2", 2, "d", sample_count=0)
        with caplog.at_level(logging.WARNING, logger="app.models.triangulated"):
            kept = list(model.two_simplex_equivalences(zero_triangle()))
        assert kept == []
        assert model.dropped_equivalences > 0
        assert "dropped" in caplog.text


class TestFieldModel:
    """Tests for the field model."""

    def test_finite_field(self):
        """A finite field gives its units presentation."""
        P = field_model_sqm("F3")
        assert isinstance(P, SqmPresentation)
        assert P.pi1().invariant_factors == [2]

    def test_rational_functions_oracle(self):
        """F2(t) is handled by an oracle."""
        oracle = field_model_sqm("F2(t)")
        assert isinstance(oracle, FieldUnitsOracle)
        assert not isinstance(oracle, SqmPresentation)
        k = oracle.field
        assert oracle.pi0().invariant_factors == [0]
        assert oracle.is_square(k.make(0b100))
        assert oracle.mod_squares(k.make(0b1000)) == k.t
        assert oracle.eta(1) == k.one


class TestDeterminant:
    """Tests for the Deligne determinant."""

    def test_full_presentation(self):
        """det satisfies every axiom on Vect(F3, 1)."""
        data = deligne_det_data(3, 1)
        cat = vect_model(3, 1)
        report = verify_det_functor(cat, data, build_presentation(cat, "full"))
        assert report.passed

    @pytest.mark.slow
    @pytest.mark.parametrize("q", [3, 5])
    def test_rank_two(self, q):
        """det satisfies every axiom on Vect(F_q, 2)."""
        cat = vect_model(q, 2)
        report = verify_det_functor(cat, deligne_det_data(q, 2), build_presentation(cat, "full"))
        assert report.passed
