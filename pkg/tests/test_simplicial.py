"""Tests for presentations of D*(C) built from simplicial categories."""

import pytest

from app.algebra import Nil2Word
from app.models import dualnum_model, vect_model
from app.models.free_modules import extension_of_scalars
from app.simplicial.builder import (
    build_presentation,
    inclusion_by_keys,
    morphism_by_cells,
    ob_key,
    stabilization_map,
)
from app.simplicial.det import (
    factor_det_functor,
    universal_det_data,
    verify_det_functor,
    zero_det_data,
)
from app.sqm import check_morphism, free_presentation
from app.sqm.cofiber import six_term


class TestBuildPresentation:
    """Tests for the generators and relators of D*(C)."""

    @pytest.mark.parametrize("q, pi1", [(2, [2]), (3, [2, 2]), (4, [6]), (5, [2, 4])])
    def test_vect_rank_one(self, q, pi1):
        """pi0 = Z and pi1 of Vect(F_q, 1) in the full presentation."""
        P = build_presentation(vect_model(q, 1), "full")
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().invariant_factors == pi1

    @pytest.mark.parametrize("mode", ["full", "reduced", "plus"])
    def test_modes_agree(self, mode):
        """Every presentation mode gives the same groups on Vect(F2, 1)."""
        P = build_presentation(vect_model(2, 1), mode)
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().invariant_factors == [2]

    def test_eta_is_nonzero(self, vect_f2_1):
        """The k-invariant of Vect(F2, 1) does not vanish."""
        eta = build_presentation(vect_f2_1).k_invariant()
        assert not eta.is_zero()

    def test_dual_numbers(self):
        """Free F2[eps]-modules of rank 1 give pi1 = (Z/2)^2."""
        P = build_presentation(dualnum_model("F2", 1))
        assert P.pi1().invariant_factors == [2, 2]

    def test_f2_rank_two(self):
        """Vect(F2, 2) has trivial pi1."""
        P = build_presentation(vect_model(2, 2))
        assert P.pi1().is_trivial

    def test_zero_object_relator(self, vect_f2_1):
        """The only degree-0 relator is the zero object."""
        P = build_presentation(vect_f2_1)
        zero = P.meta["table"].lookup(ob_key(0)).index
        assert P.r0 == [Nil2Word.gen(zero)]

    def test_metadata(self, vect_f2_1):
        """Mode, model and relator counts are recorded."""
        P = build_presentation(vect_f2_1, "plus")
        assert P.meta["mode"] == "plus"
        assert P.meta["model"] == vect_f2_1.name
        assert P.meta["relator_counts"]
        assert P.meta["free_brackets"] > 0
        assert P.truncated

    def test_exhaustive_relations(self, vect_f3_1):
        """Generator and exhaustive relation policies give the same groups."""
        small = build_presentation(vect_f3_1, "full", "generators")
        large = build_presentation(vect_f3_1, "full", "exhaustive")
        assert small.pi1().invariant_factors == large.pi1().invariant_factors
        assert len(large.r1) >= len(small.r1)


class TestInclusions:
    """Tests for identity-on-generators morphisms between presentations."""

    def test_reduced_into_full(self, vect_f2_1):
        """Reduced -> Full is a morphism inducing isomorphisms."""
        f = inclusion_by_keys(build_presentation(vect_f2_1, "reduced"), build_presentation(vect_f2_1, "full"))
        assert check_morphism(f).passed
        assert f.induced_pi0().is_isomorphism()
        assert f.induced_pi1().is_isomorphism()


class TestDeterminantFunctors:
    """Tests for determinant functors and their factorization."""

    def test_universal(self, vect_f2_1):
        """Sending every cell to its own generator is a determinant functor."""
        P = build_presentation(vect_f2_1)
        assert verify_det_functor(vect_f2_1, universal_det_data(P), P).passed

    def test_zero(self, vect_f2_1):
        """The zero functor factors through D*(C)."""
        P = build_presentation(vect_f2_1)
        f = factor_det_functor(vect_f2_1, zero_det_data(free_presentation(["x"])), P)
        assert f.induced_pi1().is_zero()


@pytest.mark.slow
class TestRankTwoAndThree:
    """Groups and maps at the levels where K0 and K1 have stabilized."""

    def test_vect_f2_rank_three(self):
        """Vect(F2, 3) has pi0 = Z and trivial pi1."""
        P = build_presentation(vect_model(2, 3), "reduced")
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().is_trivial

    def test_stabilization_two_to_three(self):
        """Passing from level 2 to level 3 over F2 is an isomorphism on both groups."""
        f = stabilization_map(lambda N: vect_model(2, N), 2, "reduced")
        assert f.induced_pi0().is_isomorphism()
        assert f.induced_pi1().is_isomorphism()

    def test_dual_numbers_rank_two(self):
        """Free F2[eps]-modules of rank at most 2 give pi1 = Z/2."""
        P = build_presentation(dualnum_model("F2", 2), "reduced")
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().invariant_factors == [2]

    def test_scalar_extension_six_term(self):
        """The cofiber of Vect(F2, 2) -> Vect(F4, 2) has an exact six-term sequence."""
        small, large = vect_model(2, 2), vect_model(4, 2)
        P = build_presentation(small, "reduced")
        Q = build_presentation(large, "reduced")
        f = morphism_by_cells(P, Q, extension_of_scalars(small, large))
        assert six_term(f).exact
