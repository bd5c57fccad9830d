"""Tests for integer linear algebra, abelian groups and nil-2 groups."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra import (
    AbGroup,
    AbGroupHom,
    Nil2Hom,
    Nil2Word,
    free_structure,
    nil2_center,
    nil2_central_kernel,
    nil2_comm,
    nil2_consistent,
    snf,
)
from app.algebra.integer import mat_mul
from app.exceptions import InvalidHom

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows: int = 3, max_cols: int = 3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


class TestSmithNormalForm:
    """Tests for the Smith normal form."""

    @settings(max_examples=60, deadline=None)
    @given(matrices())
    def test_decomposition(self, m):
        """D = U M V with D diagonal."""
        D, U, V = snf(m)
        assert mat_mul(mat_mul(U, m), V) == D
        for i, row in enumerate(D):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0

    def test_empty_matrix(self):
        """The empty matrix has an empty normal form."""
        D, U, V = snf([])
        assert D == [] and U == []


class TestAbGroup:
    """Tests for finitely generated abelian groups."""

    def test_cyclic_product(self):
        """Z/2 + Z/3 is Z/6."""
        group = AbGroup(2, [[2, 0], [0, 3]])
        assert group.invariant_factors == [6]
        assert group.order() == 6

    def test_free_part(self):
        """Z/2 + Z prints its summands."""
        group = AbGroup(2, [[2, 0]])
        assert group.invariant_factors == [2, 0]
        assert str(group) == "Z/2 + Z"
        assert not group.is_finite
        assert group.order() is None

    def test_free_cyclic(self):
        """One generator and no relators is Z."""
        assert AbGroup(1).invariant_factors == [0]

    def test_trivial(self):
        """A unit relator kills its generator."""
        group = AbGroup(1, [[1]])
        assert group.is_trivial
        assert str(group) == "0"
        assert list(group.elements()) == [()]

    def test_arithmetic_reduces(self):
        """Coordinates are reduced modulo the invariant factors."""
        group = AbGroup(1, [[4]])
        assert group.add((3,), (3,)) == (2,)
        assert group.neg((1,)) == (3,)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
    def test_order_of_diagonal(self, orders):
        """The order of a diagonal presentation is the product of its entries."""
        n = len(orders)
        rows = [[d if i == j else 0 for j in range(n)] for i, d in enumerate(orders)]
        expected = 1
        for d in orders:
            expected *= d
        assert AbGroup(n, rows).order() == expected


class TestAbGroupHom:
    """Tests for homomorphisms of abelian groups."""

    def test_doubling_on_z(self):
        """x -> 2x on Z has trivial kernel and cokernel Z/2."""
        Z = AbGroup(1)
        f = AbGroupHom(Z, Z, [(2,)])
        assert f.kernel().is_trivial
        assert f.cokernel().invariant_factors == [2]
        assert not f.is_isomorphism()

    def test_reduction_is_surjective(self):
        """Z -> Z/2 is onto with kernel Z."""
        f = AbGroupHom(AbGroup(1), AbGroup(1, [[2]]), [(1,)])
        assert f.image_contains((1,))
        assert f.kernel().invariant_factors == [0]

    def test_zero_composite(self):
        """Z -2-> Z -> Z/2 composes to zero."""
        Z, Z2 = AbGroup(1), AbGroup(1, [[2]])
        f = AbGroupHom(Z, Z, [(2,)])
        g = AbGroupHom(Z, Z2, [(1,)])
        assert f.compose(g).is_zero()


class TestNil2:
    """Tests for nilpotent class-2 groups."""

    def setup_method(self):
        """Set up test fixtures."""
        self.structure = free_structure(2)
        self.x = Nil2Word.gen(0)
        self.y = Nil2Word.gen(1)

    def test_commutator_is_central_symbol(self):
        """[x, y] is the central generator (0, 1)."""
        assert nil2_comm(self.x, self.y) == Nil2Word.central({(0, 1): 1})

    def test_inverse(self):
        """x y (x y)^-1 is trivial."""
        s = self.structure
        xy = s.mul(self.x, self.y)
        assert s.mul(xy, s.inv(xy)).is_identity()

    def test_power_and_relator(self):
        """In <x, y | x^2> the commutator has order 2."""
        group = nil2_consistent(2, [Nil2Word.gen(0, 2)])
        c = nil2_comm(self.x, self.y)
        assert group.is_identity(Nil2Word.gen(0, 2))
        assert not group.is_identity(c)
        assert group.is_identity(self.structure.power(c, 2))

    def test_equal_modulo_relators(self):
        """x^3 equals x when x^2 is a relator."""
        group = nil2_consistent(2, [Nil2Word.gen(0, 2)])
        assert group.equal(Nil2Word.gen(0, 3), self.x)


def free_words(ngens: int):
    pairs = [(i, j) for i in range(ngens) for j in range(i + 1, ngens)]
    return st.builds(
        lambda ab, comm: Nil2Word(dict(enumerate(ab)), dict(zip(pairs, comm))),
        st.lists(small_ints, min_size=ngens, max_size=ngens),
        st.lists(small_ints, min_size=len(pairs), max_size=len(pairs)),
    )


def heisenberg(w):
    """Upper-unitriangular matrix of a word on two generators."""
    p, q, c = w.ab.get(0, 0), w.ab.get(1, 0), w.comm.get((0, 1), 0)
    return [[1, p, p * q + c], [0, 1, q], [0, 0, 1]]


class TestNil2Laws:
    """Property tests for collected arithmetic in free nil-2 groups."""

    def setup_method(self):
        """Set up test fixtures."""
        self.s2 = free_structure(2)
        self.s3 = free_structure(3)

    @settings(max_examples=200, deadline=None)
    @given(free_words(3), free_words(3), free_words(3))
    def test_associativity(self, u, v, w):
        """(uv)w = u(vw)."""
        s = self.s3
        assert s.mul(s.mul(u, v), w) == s.mul(u, s.mul(v, w))

    @settings(max_examples=200, deadline=None)
    @given(free_words(3))
    def test_inverse(self, u):
        """u u^-1 and u^-1 u are trivial."""
        s = self.s3
        assert s.mul(u, s.inv(u)).is_identity()
        assert s.mul(s.inv(u), u).is_identity()

    @settings(max_examples=100, deadline=None)
    @given(free_words(3), free_words(3))
    def test_commutator_coherence(self, x, y):
        """comm(x, y) equals -x - y + x + y."""
        s = self.s3
        assert s.comm(x, y) == s.product([s.inv(x), s.inv(y), x, y])

    @settings(max_examples=200, deadline=None)
    @given(free_words(2), free_words(2))
    def test_unitriangular_oracle(self, u, v):
        """Products agree with the 3x3 unitriangular representation."""
        assert heisenberg(self.s2.mul(u, v)) == mat_mul(heisenberg(u), heisenberg(v))

    def test_collection_step(self):
        """b a collects to a b [a, b]^-1."""
        a, b = Nil2Word.gen(0), Nil2Word.gen(1)
        assert self.s2.mul(b, a) == Nil2Word({0: 1, 1: 1}, {(0, 1): -1})

    @settings(max_examples=100, deadline=None)
    @given(free_words(2))
    def test_conjugated_relators_vanish(self, w):
        """Conjugates of a relator are trivial in the quotient."""
        group = nil2_consistent(2, [Nil2Word.gen(0, 2)])
        s = group.structure
        r = Nil2Word.gen(0, 2)
        assert group.is_identity(s.product([s.inv(w), r, w]))


class TestCenters:
    """Tests for centers and central kernels."""

    def test_heisenberg_center(self):
        """The free nil-2 group on two generators has center Z spanned by [a, b]."""
        center = nil2_center(nil2_consistent(2, []))
        assert center.abgroup.invariant_factors == [0]
        assert center.coords(nil2_comm(Nil2Word.gen(0), Nil2Word.gen(1))) is not None
        assert center.coords(Nil2Word.gen(0)) is None

    def test_abelian_center(self):
        """Killing [a, b] leaves the whole group central."""
        group = nil2_consistent(2, [Nil2Word.central({(0, 1): 1})])
        assert nil2_center(group).abgroup.invariant_factors == [0, 0]

    def test_identity_kernel(self):
        """The identity has trivial kernel."""
        G = nil2_consistent(1, [])
        kernel = nil2_central_kernel(Nil2Hom(G, G, [Nil2Word.gen(0)]))
        assert kernel.abgroup.is_trivial

    def test_sum_map_kernel(self):
        """(x, y) -> x + y from Z^2 to Z has kernel Z."""
        G = nil2_consistent(2, [Nil2Word.central({(0, 1): 1})])
        H = nil2_consistent(1, [])
        f = Nil2Hom(G, H, [Nil2Word.gen(0), Nil2Word.gen(0)])
        kernel = nil2_central_kernel(f)
        assert kernel.abgroup.invariant_factors == [0]
        assert kernel.coords(Nil2Word({0: 1, 1: -1})) is not None

    def test_relator_must_die(self):
        """A relator with nontrivial image is refused."""
        G = nil2_consistent(1, [Nil2Word.gen(0, 2)])
        H = nil2_consistent(1, [])
        with pytest.raises(InvalidHom):
            nil2_central_kernel(Nil2Hom(G, H, [Nil2Word.gen(0)]))
