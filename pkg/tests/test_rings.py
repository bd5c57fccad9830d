"""Tests for rings, matrices and linear algebra."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.exceptions import NotInvertible, UnsupportedField, ZeroInput
from app.rings.fields import (
    BinaryField,
    DualNumbers,
    F2RationalFunctions,
    PrimeField,
    field_of_order,
    ring_from_descriptor,
)
from app.rings.linalg import (
    count_general_linear,
    det,
    field_linalg,
    general_linear,
    inverse,
    is_square,
    kernel,
    local_normal_form,
    local_ranks,
    rank,
    square_class,
)
from app.rings.matrix import Mat


class TestFields:
    """Tests for finite fields and descriptors."""

    def test_prime_field_arithmetic(self):
        """F5 multiplies and inverts modulo 5."""
        k = PrimeField(5)
        assert k.mul(3, 4) == 2
        assert k.mul(k.inv(3), 3) == k.one

    def test_binary_field_order(self):
        """F2m:2 has four elements."""
        k = BinaryField(2)
        assert k.order == 4
        assert len(list(k.elements())) == 4

    def test_field_of_order(self):
        """Primes and powers of two are supported."""
        assert field_of_order(3).order == 3
        assert field_of_order(4).order == 4

    def test_odd_prime_power_rejected(self):
        """F9 is outside the supported fields."""
        with pytest.raises(UnsupportedField):
            field_of_order(9)

    @pytest.mark.parametrize("descriptor", ["F4", "dual:F2", "F2(t)", "Fp:5", "F2m:2", "Z"])
    def test_descriptors(self, descriptor):
        """Every documented descriptor parses."""
        assert ring_from_descriptor(descriptor) is not None

    def test_unknown_descriptor(self):
        """Unknown descriptors raise UnsupportedField."""
        with pytest.raises(UnsupportedField):
            ring_from_descriptor("Q(sqrt2)")


class TestRationalFunctions:
    """Tests for F2(t)."""

    def setup_method(self):
        """Set up test fixtures."""
        self.k = F2RationalFunctions()

    def test_format_t(self):
        """t prints as t."""
        assert self.k.format(self.k.t) == "t"

    def test_reduced_fractions(self):
        """t^2 / t reduces to t."""
        assert self.k.make(0b100, 0b10) == self.k.t

    def test_zero_denominator(self):
        """A zero denominator is rejected."""
        with pytest.raises(ZeroInput):
            self.k.make(1, 0)

    def test_square_classes(self):
        """t^3 is t times a square; t^2 is a square."""
        assert square_class(self.k, self.k.make(0b1000)) == self.k.t
        assert is_square(self.k, self.k.make(0b100))[0]
        assert not is_square(self.k, self.k.t)[0]


class TestDualNumbers:
    """Tests for k[eps]."""

    def setup_method(self):
        """Set up test fixtures."""
        self.R = DualNumbers(PrimeField(2))

    def test_eps_squares_to_zero(self):
        """eps^2 = 0."""
        assert self.R.mul(self.R.eps, self.R.eps) == self.R.zero

    def test_units(self):
        """1 and 1 + eps are the units of F2[eps]."""
        assert self.R.is_unit((1, 1))
        assert not self.R.is_unit(self.R.eps)
        assert self.R.unit_log((1, 1)) == (0, 1)

    def test_parse_coefficient(self):
        """(t)eps parses over F2(t)."""
        R = ring_from_descriptor("dual:F2(t)")
        x = R.parse("(t)eps")
        assert x == (R.base.zero, R.base.t)
        assert R.format(x) == "(t)eps"


class TestLinalg:
    """Tests for matrices over finite rings."""

    def setup_method(self):
        """Set up test fixtures."""
        self.k = PrimeField(3)

    def test_general_linear_count(self):
        """GL2(F3) has 48 elements."""
        assert len(list(general_linear(self.k, 2))) == 48
        assert count_general_linear(self.k, 2) == 48

    def test_gl1_of_dual_numbers(self):
        """GL1(F2[eps]) has two elements."""
        assert len(list(general_linear(DualNumbers(PrimeField(2)), 1))) == 2

    def test_det_and_inverse(self):
        """A matrix times its inverse is the identity."""
        M = Mat.from_ints(self.k, [[1, 2], [0, 1]])
        assert det(M) == 1
        assert (M @ inverse(M)).is_identity()

    def test_singular(self):
        """Singular matrices have no inverse and a kernel."""
        M = Mat.from_ints(self.k, [[1, 2], [2, 1]])
        assert rank(M) == 1
        assert len(kernel(M)) == 1
        with pytest.raises(NotInvertible):
            inverse(M)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(0, 4), min_size=4, max_size=4))
    def test_det_multiplicative(self, entries):
        """det(AB) = det(A) det(B) over F5."""
        k = PrimeField(5)
        A = Mat.from_ints(k, [entries[:2], entries[2:]])
        B = Mat.from_ints(k, [[1, 1], [0, 2]])
        assert det(A @ B) == k.mul(det(A), det(B))


dual_f3_entries = st.tuples(st.integers(0, 2), st.integers(0, 2))


class TestLocalNormalForm:
    """Tests for normal forms over F3[eps] and field linear algebra."""

    def setup_method(self):
        """Set up test fixtures."""
        self.R = DualNumbers(PrimeField(3))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(dual_f3_entries, min_size=6, max_size=6))
    def test_normal_form(self, entries):
        """P M Q is diagonal with entries 1, eps or 0."""
        R = self.R
        M = Mat.from_rows(R, [entries[:3], entries[3:]], 3)
        P, D, Q = local_normal_form(M)
        assert P @ M @ Q == D
        for i in range(2):
            for j in range(3):
                if i != j:
                    assert D[i, j] == R.zero
                else:
                    assert D[i, j] in (R.one, R.eps, R.zero)

    def test_ranks(self):
        """diag(1, eps) has one unit and one eps pivot."""
        R = self.R
        M = Mat.from_rows(R, [[R.eps, R.zero], [R.zero, R.from_int(2)]], 2)
        _, D, _ = local_normal_form(M)
        assert local_ranks(D) == (1, 1)

    def test_field_linalg(self):
        """Rank, kernel and determinant in one call."""
        k = PrimeField(3)
        result = field_linalg(Mat.from_ints(k, [[1, 2], [2, 1]]))
        assert result.rank == 1
        assert len(result.kernel) == 1
        assert len(result.image) == 1
        assert result.det == 0
