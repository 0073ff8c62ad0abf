"""Tests for exact dense linear algebra."""

from __future__ import annotations

from fractions import Fraction

import pytest

from oddquad import linalg
from oddquad.errors import BasisChangeError, DimensionError
from oddquad.linalg import Subspace


class TestEchelon:
    """Row reduction, rank and kernels."""

    def test_rank_of_dependent_rows(self) -> None:
        """A repeated row does not raise the rank."""
        rows = linalg.matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert linalg.rank(rows, 3) == 2

    def test_kernel_solves_the_system(self) -> None:
        """Every kernel vector is annihilated by the rows."""
        rows = linalg.matrix([[1, 2, 3], [0, 1, 1]])
        basis = linalg.kernel(rows, 3)
        assert len(basis) == 1, f"expected a one-dimensional kernel, got {basis}"
        assert linalg.is_zero_vector(linalg.matvec(rows, basis[0])), "kernel vector"

    def test_kernel_of_empty_system_is_everything(self) -> None:
        """No rows means every vector is a solution."""
        assert linalg.kernel([], 2) == linalg.identity(2)

    def test_inverse(self) -> None:
        """``A A^-1 = 1`` over the rationals."""
        square = linalg.matrix([[2, 1], [1, 1]])
        product = linalg.matmul(square, linalg.inverse(square))
        assert product == linalg.identity(2)

    def test_singular_inverse_raises(self) -> None:
        """A singular matrix has no inverse."""
        with pytest.raises(BasisChangeError, match="singular"):
            linalg.inverse(linalg.matrix([[1, 2], [2, 4]]))

    def test_ragged_rows_raise(self) -> None:
        """Row lengths are checked against the column count."""
        with pytest.raises(DimensionError, match="row"):
            linalg.rref(linalg.matrix([[1, 2], [1]]), 2)


class TestSubspace:
    """Canonical subspaces."""

    def test_span_is_canonical(self) -> None:
        """Different spanning sets of one subspace compare equal."""
        first = Subspace.span(linalg.matrix([[1, 1, 0], [0, 1, 0]]), 3)
        second = Subspace.span(linalg.matrix([[1, 0, 0], [3, 2, 0], [0, 5, 0]]), 3)
        assert first == second, "echelon bases should coincide"
        assert first.dim == 2

    def test_intersection(self) -> None:
        """Two planes in Q^3 meet in a line."""
        xy = Subspace.coordinates_range(3, (0, 1))
        yz = Subspace.coordinates_range(3, (1, 2))
        meet = xy.intersection(yz)
        assert meet == Subspace.coordinates_range(3, (1,)), f"got {meet}"

    def test_contains_and_coordinates(self) -> None:
        """Members have coordinates at the pivots."""
        space = Subspace.span(linalg.matrix([[1, 0, 2], [0, 1, -1]]), 3)
        member = linalg.vector([3, Fraction(1, 2), Fraction(11, 2)])
        assert space.contains(member), "3*r1 + 1/2*r2 lies in the span"
        assert space.coordinates(member) == linalg.vector([3, Fraction(1, 2)])
        assert not space.contains(linalg.vector([0, 0, 1])), "e3 is outside"

    def test_subspace_order(self) -> None:
        """A line in a plane is a subspace of it, not conversely."""
        line = Subspace.coordinates_range(3, (0,))
        plane = Subspace.coordinates_range(3, (0, 1))
        assert line.is_subspace_of(plane)
        assert not plane.is_subspace_of(line)
