"""Tests for presented stable quadratic modules, morphisms, cofibers and homotopies."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra import Nil2Word, nil2_comm
from app.exceptions import NotACycle, UnknownGenerator
from app.models import units_model_sqm
from app.rings.fields import PrimeField
from app.sqm import (
    F1Element,
    SqMorphism,
    SqmPresentation,
    check_morphism,
    extend_homotopy,
    free_boundary,
    free_bracket,
    free_presentation,
    identity_morphism,
    multiplication_morphism,
    random_free_morphism,
    round_trip_check,
    six_term,
    strict_picard_from_sqm,
    verify_homotopy,
)


degree0_words = st.builds(
    lambda ab: Nil2Word(dict(enumerate(ab))),
    st.lists(st.integers(-4, 4), min_size=3, max_size=3),
)


class TestFreeModule:
    """Tests for the boundary and bracket of the free degree-1 group."""

    @settings(max_examples=100, deadline=None)
    @given(degree0_words, degree0_words)
    def test_boundary_of_bracket(self, u, v):
        """The boundary of <u, v> is the commutator [v, u]."""
        assert free_boundary(free_bracket(u, v, 3), 3) == nil2_comm(v, u)

    def test_generator_boundary(self):
        """A degree-1 generator maps to its degree-0 copy."""
        assert free_boundary(F1Element.generator(0), 2, 1) == Nil2Word.gen(2)

    def test_tensor_outside_e0(self):
        """Tensor keys must lie in E0."""
        with pytest.raises(UnknownGenerator):
            free_boundary(F1Element({(0, 5): 1}), 2)


class TestFreePresentation:
    """Tests for free stable quadratic modules."""

    def test_one_generator(self):
        """The free module on x has pi0 = Z, pi1 = Z/2 and eta onto pi1."""
        P = free_presentation(["x"])
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().invariant_factors == [2]
        eta = P.k_invariant()
        assert eta.images == [(1,)]

    def test_two_generators(self):
        """Two degree-0 generators give Z^2 and (Z/2)^2."""
        P = free_presentation(["x", "y"])
        assert P.pi0().invariant_factors == [0, 0]
        assert P.pi1().invariant_factors == [2, 2]

    def test_killed_generator(self):
        """A degree-1 generator bounding x kills both groups."""
        P = SqmPresentation(["x"], ["a"], [Nil2Word.gen(0)])
        assert P.pi0().is_trivial
        assert P.pi1().is_trivial

    def test_bracket_is_a_cycle(self):
        """<x, x> is a cycle whose class generates pi1."""
        P = free_presentation(["x"])
        w = P.bracket(Nil2Word.gen(0), Nil2Word.gen(0))
        assert P.is_cycle(w)
        assert P.class_in_pi1(w) == (1,)

    def test_not_a_cycle(self):
        """A generator with nonzero boundary has no pi1 class."""
        P = SqmPresentation(["x"], ["a"], [Nil2Word.gen(0)])
        with pytest.raises(NotACycle):
            P.class_in_pi1(P.gen1(0))

    def test_undeclared_generator(self):
        """Boundaries may only mention declared generators."""
        with pytest.raises(UnknownGenerator):
            SqmPresentation(["x"], ["a"], [Nil2Word.gen(3)])

    def test_json_round_trip(self):
        """A presentation survives export and import."""
        P = SqmPresentation(["x", "y"], ["a"], [Nil2Word.gen(0, 2)], name="p")
        Q = SqmPresentation.from_json(P.to_json())
        assert Q.pi0().invariant_factors == P.pi0().invariant_factors
        assert Q.pi1().invariant_factors == P.pi1().invariant_factors


class TestUnitsModel:
    """Tests for the units model of a finite field."""

    @pytest.mark.parametrize("p, pi1, eta", [(3, [2], (1,)), (5, [4], (2,))])
    def test_odd_primes(self, p, pi1, eta):
        """pi1 is F_p^x and eta hits -1."""
        P = units_model_sqm(PrimeField(p))
        assert P.pi0().invariant_factors == [0]
        assert P.pi1().invariant_factors == pi1
        assert P.k_invariant().images == [eta]

    def test_f2_has_trivial_units(self):
        """F2^x is trivial."""
        assert units_model_sqm(PrimeField(2)).pi1().is_trivial


class TestMorphisms:
    """Tests for morphisms of presentations."""

    def test_identity(self):
        """The identity passes every morphism check and induces isomorphisms."""
        P = free_presentation(["x", "y"])
        f = identity_morphism(P)
        assert check_morphism(f).passed
        assert f.induced_pi0().is_isomorphism()
        assert f.induced_pi1().is_isomorphism()

    def test_multiplication_by_two(self):
        """x -> 2x is injective on pi0 and zero on pi1."""
        f = multiplication_morphism(2)
        assert check_morphism(f).passed
        assert f.induced_pi0().kernel().is_trivial
        assert f.induced_pi1().is_zero()

    def test_arity(self):
        """A morphism needs an image for every generator."""
        P = free_presentation(["x"])
        with pytest.raises(ValueError):
            SqMorphism(P, P, [], [])

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_free_morphisms_are_valid(self, seed):
        """Random morphisms of free presentations pass the morphism checks."""
        f = random_free_morphism(np.random.default_rng(seed))
        assert check_morphism(f).passed


class TestCofiber:
    """Tests for cofibers and the six-term sequence."""

    def test_multiplication_by_two(self):
        """The cofiber of x -> 2x has pi0 = Z/2 = pi1 and its sequence is exact."""
        sequence = six_term(multiplication_morphism(2))
        assert sequence.exact
        assert set(sequence.exactness) == {"pi1_D", "pi1_cof", "pi0_C", "pi0_D", "pi0_cof"}
        assert sequence.groups["pi0_cof"].invariant_factors == [2]
        assert sequence.groups["pi1_cof"].invariant_factors == [2]

    def test_report(self):
        """The report records one check per spot."""
        report = six_term(multiplication_morphism(2)).report()
        assert report.passed
        assert report.checked == 5


class TestHomotopy:
    """Tests for homotopies extended from a free basis."""

    def setup_method(self):
        """Set up test fixtures."""
        self.P = free_presentation(["x"])
        self.Q = SqmPresentation(["y"], ["b"], [Nil2Word.gen(0)])
        self.g = SqMorphism(self.P, self.Q, [Nil2Word.gen(0)], [])

    def test_extend_and_verify(self):
        """f = g + alpha satisfies the homotopy equations."""
        f, alpha = extend_homotopy(self.g, [self.Q.gen1(0)])
        report = verify_homotopy(alpha, f, samples=20, rng=np.random.default_rng(1))
        assert report.passed

    def test_extension_changes_degree_zero(self):
        """alpha(x) = b moves x -> y to x -> 2y."""
        f, _ = extend_homotopy(self.g, [self.Q.gen1(0)])
        assert self.Q.equal0(f.on_deg0[0], Nil2Word.gen(0, 2))


class TestPicard:
    """Tests for the strict Picard groupoid of a presentation."""

    def test_round_trip(self):
        """Boundaries and brackets are recovered from arrows and braidings."""
        P = SqmPresentation(["x", "y"], ["a"], [Nil2Word.gen(0, 2)])
        assert round_trip_check(strict_picard_from_sqm(P)).passed
