"""Tests for pairs of weak triangles and the relations among them."""

from dataclasses import replace

import numpy as np
import pytest

from app.exceptions import MismatchedPair, MissingStructure, ModeMismatch, NotA3x3, SearchExhausted
from app.k1 import (
    CellSymbols,
    PairOfWeakTriangles,
    ThreeByThree,
    WeakTriangle,
    inversions,
    pair_class,
    pair_expression,
    perm_class,
    realize_pi1,
    rel_weak_3x3,
    sum_formula_check,
    weak_triangle_class,
)
from app.k1.families import (
    automorphism_pair,
    decorated_grids,
    degenerate_grids,
    degenerate_sum_instances,
    ses_grid,
    ses_grids,
)
from app.k1.relations import rel_3x3
from app.models import vect_model
from app.rings.matrix import Mat
from app.simplicial.builder import build_presentation
from app.sqm import free_presentation


class TestInversions:
    """Tests for inversion pairs of a permutation."""

    def test_identity(self):
        """The identity has no inversions."""
        assert inversions([0, 1, 2]) == []

    def test_transposition(self):
        """Swapping two summands has one inversion."""
        assert inversions([1, 0]) == [(1, 0)]

    def test_reversal(self):
        """Reversing three summands inverts every pair."""
        assert len(inversions([2, 1, 0])) == 3


class TestPairsOfWeakTriangles:
    """Tests for classes of pairs of weak triangles."""

    def setup_method(self):
        """Set up test fixtures."""
        self.cat = vect_model(3, 1)
        self.cells = CellSymbols(self.cat, build_presentation(self.cat, "full"))

    def test_automorphism_pair(self):
        """(s0 X, 1) against (s0 X, u) represents the unit u."""
        u = self.cat.automorphism_generators(1)[0]
        pair = automorphism_pair(self.cat, u)
        assert pair.mismatches(self.cat) == []
        group = self.cells.presentation.pi1()
        assert pair_class(self.cells, pair) != group.zero()

    def test_trivial_pair(self):
        """A weak triangle against itself has class zero."""
        D = self.cat.degeneracy1(1, 0)
        wt = WeakTriangle(D, self.cat.identity(1))
        pair = PairOfWeakTriangles(wt, wt)
        assert pair.is_trivial()
        assert pair_class(self.cells, pair) == self.cells.presentation.pi1().zero()

    def test_mismatched_pair(self):
        """Pairs must share d1, d2 and the source of f."""
        first = WeakTriangle(self.cat.degeneracy1(1, 0), self.cat.identity(1))
        second = WeakTriangle(self.cat.degeneracy1(1, 1), self.cat.identity(0))
        pair = PairOfWeakTriangles(first, second)
        assert pair.mismatches(self.cat)
        with pytest.raises(MismatchedPair):
            pair_expression(self.cells, pair)

    def test_realization_runs_out(self):
        """At rank 1 the pair search reaches only half of pi1 of Vect(F3, 1)."""
        result = realize_pi1(self.cells)
        assert len(result.found) == 2
        assert len(result.missing) == 2
        with pytest.raises(SearchExhausted):
            realize_pi1(self.cells, strict=True)


class TestRelations:
    """Tests for the 3x3 and permutation relations."""

    def test_degenerate_3x3(self, vect_f3_1):
        """Degenerate 3x3 diagrams satisfy the 3x3 relation."""
        cells = CellSymbols(vect_f3_1, build_presentation(vect_f3_1, "full"))
        grids = degenerate_grids(vect_f3_1)
        assert grids
        for grid in grids:
            assert rel_3x3(cells, grid).passed

    def test_permutation_needs_plus(self, vect_f3_1):
        """The permutation formula is refused outside the plus presentation."""
        cells = CellSymbols(vect_f3_1, build_presentation(vect_f3_1, "full"))
        with pytest.raises(ModeMismatch):
            perm_class(cells, [0, 1], [1, 0])

    def test_permutation_plus(self, vect_f3_1, vect_f3_plus):
        """Swapping R^0 and R^1 costs nothing."""
        cells = CellSymbols(vect_f3_1, vect_f3_plus)
        assert perm_class(cells, [0, 1], [1, 0]).passed

    def test_cells_need_a_table(self):
        """CellSymbols refuses presentations not built from a category."""
        with pytest.raises(ValueError):
            CellSymbols(vect_model(2, 1), free_presentation(["x"]))


class TestSesGrids:
    """Tests for 3x3 diagrams of short exact sequences A' >-> A >-> W >-> B."""

    def setup_method(self):
        """Set up test fixtures."""
        self.cat = vect_model(2, 2)

    def test_grids_are_not_degenerate(self):
        """theta3 carries a proper cofibration W >-> B, so it is no s2 degeneracy."""
        grids = ses_grids(self.cat, 20, np.random.default_rng(4))
        assert len(grids) == 20
        for grid in grids:
            assert grid.mismatches(self.cat) == []
            assert grid.thetas[2] != self.cat.degeneracy2(self.cat.face3(grid.thetas[0], 1), 2)

    def test_identity_automorphisms(self):
        """With identities everywhere the diagram sits in standard coordinates."""
        I = self.cat.identity
        grid = ses_grid(self.cat, (0, 1, 0, 1), (I(1), I(0), I(1), I(2)))
        assert grid.thetas[2].i2 == Mat.from_ints(self.cat.ring, [[1], [0]])
        assert grid.corner(self.cat, 1, 3) == 1
        assert grid.corner(self.cat, 1, 1) == 0

    def test_out_of_range(self):
        """Ranks past the level are refused."""
        I = self.cat.identity
        with pytest.raises(NotA3x3):
            ses_grid(self.cat, (1, 1, 0, 1), (I(2), I(1), I(2), I(3)))

    def test_needs_free_modules(self, ftr_f2_1):
        """Only free-module models have short exact sequences to glue."""
        with pytest.raises(MissingStructure):
            ses_grids(ftr_f2_1, 1, np.random.default_rng(0))

    @pytest.mark.slow
    def test_relation_on_fifty_grids(self):
        """Fifty non-degenerate 3x3 diagrams of Vect(F3, 2) satisfy the 3x3 relation."""
        cat = vect_model(3, 2)
        cells = CellSymbols(cat, build_presentation(cat, "full"))
        grids = ses_grids(cat, 50, np.random.default_rng(11))
        assert len(grids) == 50
        for grid in grids:
            assert grid.thetas[2] != cat.degeneracy2(cat.face3(grid.thetas[0], 1), 2)
            assert rel_3x3(cells, grid).passed

    @pytest.mark.slow
    def test_realization_at_rank_two(self):
        """At rank 2 pairs of weak triangles reach all of pi1 of Vect(F3, 2) = Z/2."""
        cat = vect_model(3, 2)
        cells = CellSymbols(cat, build_presentation(cat, "full"))
        assert cells.presentation.pi1().invariant_factors == [2]
        result = realize_pi1(cells, strict=True)
        assert result.missing == []
        assert len(result.found) == 2


class TestWeakRelations:
    """Tests for weak triangles, sums and weak 3x3 diagrams."""

    def setup_method(self):
        """Set up test fixtures."""
        self.cat = vect_model(2, 1)
        self.cells = CellSymbols(self.cat, build_presentation(self.cat, "full"))

    def test_identity_decoration(self):
        """[D, 1] = [D] in C1."""
        D = self.cat.degeneracy1(1, 1)
        wt = WeakTriangle(D, self.cat.identity(self.cat.face2(D, 0)))
        assert self.cells.presentation.equal1(weak_triangle_class(self.cells, wt), self.cells.simplex(D))

    def test_sums_need_plus(self):
        """The sum formulas are refused outside the plus presentation."""
        first, second = degenerate_sum_instances(self.cat)[0]
        with pytest.raises(ModeMismatch):
            sum_formula_check(self.cells, first, second)

    def test_malformed_weak_grid(self):
        """A weak 3x3 diagram needs four 3-simplices."""
        data = decorated_grids(self.cat, 1, np.random.default_rng(0))[0]
        broken = replace(data, grid=ThreeByThree(data.grid.thetas[:3]))
        assert broken.mismatches(self.cat) == ["expected four 3-simplices, got 3"]
        with pytest.raises(NotA3x3):
            rel_weak_3x3(self.cells, broken)
