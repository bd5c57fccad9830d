"""Tests for 3-periodic complexes over dual numbers, det3 and octahedra."""

import pytest

from app.exceptions import MissingWitness, NotAcyclic, NotTriangular
from app.k1.relations import ThreeByThree
from app.models import ftr_model
from app.rings.fields import ring_from_descriptor
from app.rings.matrix import Mat
from app.trifr import (
    cone,
    degeneracy,
    det3,
    generator_triangle,
    is_acyclic,
    is_distinguished,
    octahedron_det_holds,
    p_class,
    require_acyclic,
    rho,
    split_virtual,
    standard_triangle,
)
from app.trifr.checks import (
    det3_invariance_check,
    extension_det_check,
    jordan_class_check,
    jordan_split,
    octahedron_det_check,
)
from app.trifr.complexes import Periodic3Complex, acyclicity_defect


def complex_over(descriptor, f, i, q):
    R = ring_from_descriptor(descriptor)
    return Periodic3Complex(Mat.from_json(R, f, 1), Mat.from_json(R, i, 1), Mat.from_json(R, q, 1))


class TestDet3:
    """Tests for det3 and its class mod squares."""

    def setup_method(self):
        """Set up test fixtures."""
        self.T = complex_over("dual:F2(t)", [["eps"]], [["eps"]], [["(t)eps"]])
        self.k = self.T.ring.base

    def test_twisted_generator(self):
        """R -eps-> R -eps-> R -t eps-> R has det3 = t, a non-square."""
        assert is_acyclic(self.T)
        assert det3(self.T) == self.k.t
        assert p_class(self.T) == self.k.t
        assert not is_distinguished(self.T)

    def test_rotation(self):
        """Rotating the triangle keeps det3."""
        assert det3(self.T.shift()) == det3(self.T)

    def test_generator_is_distinguished(self):
        """R -eps-> R -eps-> R -eps-> R is distinguished."""
        T = generator_triangle(ring_from_descriptor("dual:F2"))
        assert is_distinguished(T)
        assert det3(T) == T.ring.base.one

    def test_not_exact(self):
        """The zero complex on R, R, R is not exact."""
        T = complex_over("dual:F2", [["0"]], [["0"]], [["0"]])
        assert acyclicity_defect(T) is not None
        with pytest.raises(NotAcyclic):
            require_acyclic(T)

    def test_not_a_complex(self):
        """Identity maps do not compose to zero."""
        T = complex_over("dual:F2", [["1"]], [["1"]], [["1"]])
        assert acyclicity_defect(T) == 0


class TestCones:
    """Tests for cones of maps of free k[eps]-modules."""

    @pytest.mark.parametrize("entry", ["1", "eps"])
    def test_cone_is_distinguished(self, entry):
        """The cone triangle of a rank-1 map is distinguished."""
        R = ring_from_descriptor("dual:F2")
        T = cone(Mat.from_json(R, [[entry]], 1))
        assert is_distinguished(T)


class TestOctahedra:
    """Tests for degenerate octahedra and the determinant identity."""

    @pytest.mark.parametrize("j", [0, 1, 2])
    def test_degeneracies(self, j):
        """s_j T satisfies the octahedral conditions and the determinant identity."""
        R = ring_from_descriptor("dual:F2(t)")
        T = standard_triangle(R, Mat.from_rows(R, [[R.lift(R.base.t)]]))
        O = degeneracy(T, j)
        assert O.conditions_hold()
        assert octahedron_det_holds(O)

    def test_bad_degeneracy(self):
        """Only s0, s1 and s2 exist."""
        with pytest.raises(IndexError):
            degeneracy(generator_triangle(ring_from_descriptor("dual:F2")), 3)

    def test_model_octahedra(self, ftr_f2_1):
        """Every octahedron of the rank-1 model satisfies the determinant identity."""
        assert octahedron_det_check(ftr_f2_1).passed

    @pytest.mark.parametrize("base, flavor", [("F2", "d"), ("F2", "v"), ("F4", "v")])
    def test_rank_one_octahedra_exhaustive(self, base, flavor):
        """At rank 1 every octahedron is enumerated and checked."""
        model = ftr_model(base, 1, flavor)
        report = octahedron_det_check(model)
        assert not model.sampled
        assert report.checked == len(list(model.three_simplices()))
        assert report.passed


class TestDeterminantChecks:
    """Tests for the randomized det3 identities."""

    def test_invariance(self):
        """det3 is invariant under isomorphism and rotation over F3[eps]."""
        R = ring_from_descriptor("dual:F3")
        assert det3_invariance_check(R, count=15, seed=3, max_rank=2).passed

    def test_extensions(self):
        """det3 is multiplicative on extensions over F3[eps]."""
        R = ring_from_descriptor("dual:F3")
        assert extension_det_check(R, count=10, seed=5, max_rank=1).passed


class TestJordanSplit:
    """Tests for peeling upper-triangular matrices."""

    def setup_method(self):
        """Set up test fixtures."""
        self.R = ring_from_descriptor("dual:F3")

    def test_two_by_two(self):
        """A 2x2 upper-triangular matrix splits into two rank-1 triangles."""
        R = self.R
        A = Mat.from_rows(R, [[R.lift(2), R.one], [R.zero, R.one]])
        split = jordan_split(A)
        assert len(split.steps) == 1
        assert split.diagonal == [2, 1]
        assert split.report().passed

    def test_not_triangular(self):
        """Lower-triangular input is refused."""
        R = self.R
        A = Mat.from_rows(R, [[R.one, R.zero], [R.one, R.one]])
        with pytest.raises(NotTriangular):
            jordan_split(A)

    def test_steps_are_3x3_diagrams(self):
        """Each peeling step glues four virtual octahedra into a 3x3 diagram."""
        R = ring_from_descriptor("dual:F2")
        unit = R.add(R.one, R.eps)
        A = Mat.from_rows(R, [[R.one, R.one, R.eps], [R.zero, unit, R.one], [R.zero, R.zero, R.one]])
        split = jordan_split(A)
        assert len(split.steps) == 2
        assert split.report().passed
        model = ftr_model("F2", 3, "v")
        for step in split.steps:
            assert all(O.is_virtual() for O in step.octahedra)
            assert ThreeByThree(step.octahedra).mismatches(model) == []

    def test_classes_need_witnesses(self, ftr_f2_1):
        """Without the peeling octahedra the class check refuses to run."""
        R = ring_from_descriptor("dual:F2")
        A = Mat.from_rows(R, [[R.one, R.one], [R.zero, R.one]])
        with pytest.raises(MissingWitness):
            jordan_class_check(A, ftr_f2_1)

    @pytest.mark.slow
    def test_unipotent_classes(self):
        """[T_A] splits into the diagonal triangles in pi1 for A = diag(1 + eps, 1) + a unipotent part."""
        R = ring_from_descriptor("dual:F2")
        A = Mat.from_rows(R, [[R.add(R.one, R.eps), R.one], [R.zero, R.one]])
        report = jordan_class_check(A)
        assert report.checked == 1
        assert report.passed
        assert report.notes["sampled"]

class TestSplitting:
    """Tests for splitting a triangle into contractible and standard parts."""

    def setup_method(self):
        """Set up test fixtures."""
        self.T = complex_over("dual:F2(t)", [["eps"]], [["eps"]], [["(t)eps"]])
        self.k = self.T.ring.base

    def test_rho(self):
        """The connecting composite of the twisted generator is t."""
        r = rho(self.T)
        assert r.shape == (1, 1)
        assert r[0, 0] == self.k.t

    def test_split_twisted_generator(self):
        """A rank-1 triangle has no contractible part and rho_bar = t."""
        split = split_virtual(self.T)
        assert split.d == 1
        assert split.contractible == []
        assert split.rho_bar[0, 0] == self.T.ring.lift(self.k.t)
        assert split.verify()

    def test_split_needs_exactness(self):
        """Non-exact complexes cannot be split."""
        with pytest.raises(NotAcyclic):
            split_virtual(complex_over("dual:F2", [["0"]], [["0"]], [["0"]]))
