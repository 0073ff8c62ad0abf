"""Tests for exact scalars in Q and Q(sqrt(d))."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oddquad.errors import MixedRadicandError, ScalarError
from oddquad.scalar import ONE, ZERO, Scalar, adjoin_sqrt, square_free_decomposition

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def quadratic(draw: st.DrawFn, radicand: int = 2) -> Scalar:
    """Draw an element of Q(sqrt(radicand))."""
    return Scalar(draw(rationals), draw(rationals), radicand)


class TestFieldAxioms:
    """Arithmetic in Q(sqrt(2)) obeys the field axioms exactly."""

    @given(quadratic(), quadratic(), quadratic())
    def test_associativity(self, a: Scalar, b: Scalar, c: Scalar) -> None:
        """Addition and multiplication associate."""
        assert (a + b) + c == a + (b + c), "addition should associate"
        assert (a * b) * c == a * (b * c), "multiplication should associate"

    @given(quadratic(), quadratic(), quadratic())
    def test_distributivity(self, a: Scalar, b: Scalar, c: Scalar) -> None:
        """Multiplication distributes over addition."""
        assert a * (b + c) == a * b + a * c, "multiplication should distribute"

    @given(quadratic(), quadratic())
    def test_commutativity(self, a: Scalar, b: Scalar) -> None:
        """Both operations commute."""
        assert a + b == b + a, "addition should commute"
        assert a * b == b * a, "multiplication should commute"

    @given(quadratic())
    def test_inverse(self, a: Scalar) -> None:
        """Every non-zero element has a two-sided inverse."""
        if a.is_zero:
            with pytest.raises(ScalarError, match="division by zero"):
                a.inverse()
            return
        assert a * a.inverse() == ONE, f"{a} times its inverse should be one"
        assert a - a == ZERO, "a - a should vanish"


class TestScalarBasics:
    """Normalisation, parsing and rendering."""

    def test_zero_radical_drops_radicand(self) -> None:
        """A zero radical coefficient yields a rational."""
        value = Scalar(Fraction(3), Fraction(0), 5)
        assert value.is_rational, "zero radical part should be rational"
        assert value == 3, "rationals compare with ints"

    def test_parse_accepts_unicode_minus(self) -> None:
        """Both ASCII and U+2212 minus signs parse."""
        assert Scalar.parse("−1/2") == Fraction(-1, 2), "unicode minus"
        assert Scalar.parse(" -1/2 ") == Fraction(-1, 2), "ascii minus"

    def test_parse_rejects_garbage(self) -> None:
        """Unparsable text raises ScalarError."""
        with pytest.raises(ScalarError, match="cannot parse"):
            Scalar.parse("one half")

    def test_render(self) -> None:
        """Irrational values render with their radical."""
        assert str(Scalar(Fraction(1), Fraction(-2), 3)) == "1 - 2*sqrt(3)"
        assert str(Scalar(Fraction(0), Fraction(1, 2), 3)) == "1/2*sqrt(3)"

    def test_mixed_radicands_raise(self) -> None:
        """Elements of different quadratic fields do not combine."""
        with pytest.raises(MixedRadicandError, match="sqrt\\(2\\)"):
            left = Scalar(Fraction(0), Fraction(1), 2)
            _ = left + Scalar(Fraction(0), Fraction(1), 3)

    @pytest.mark.parametrize("radicand", [4, 12, 1])
    def test_bad_radicands_raise(self, radicand: int) -> None:
        """Radicands must be square-free and not perfect squares."""
        with pytest.raises(ScalarError, match=str(radicand)):
            Scalar(Fraction(0), Fraction(1), radicand)

    def test_square_free_decomposition(self) -> None:
        """``-72 = 6**2 * -2``."""
        assert square_free_decomposition(-72) == (6, -2)


class TestAdjoinSqrt:
    """Square-root adjunction."""

    @given(rationals.filter(lambda value: value != 0))
    def test_root_squares_back(self, value: Fraction) -> None:
        """The adjoined root squares to the input."""
        context = adjoin_sqrt(value)
        squared = context.root * context.root
        assert squared == value, f"sqrt({value})^2 should be {value}"

    def test_perfect_square_stays_rational(self) -> None:
        """``sqrt(9/4)`` is rational."""
        context = adjoin_sqrt(Fraction(9, 4))
        assert context.is_rational, "9/4 is a square"
        assert context.root == Fraction(3, 2)

    def test_non_square_extends(self) -> None:
        """``sqrt(8) = 2 sqrt(2)``."""
        context = adjoin_sqrt(8)
        assert context.radicand == 2
        assert context.root == Scalar(Fraction(0), Fraction(2), 2)

    def test_zero_raises(self) -> None:
        """Zero has no useful root for scaling."""
        with pytest.raises(ScalarError, match="division by zero"):
            adjoin_sqrt(0)
