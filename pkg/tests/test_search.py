"""Tests for the small-grid filiform search."""

from __future__ import annotations

from fractions import Fraction

import pytest

from oddquad import catalog, core
from oddquad.classify import search
from oddquad.errors import UnsupportedRequestError


class TestSearch:
    """Exhaustive search with ``dim g0 = dim g1``."""

    def test_one_dimensional_even_part(self) -> None:
        """``[e1, e1] = c X1`` passes for every grid value: two classes."""
        report = search.small_search_nonexistence(1)
        assert len(report.hits) == 3, f"got {len(report.hits)} hits"
        assert len(report.classes) == 2
        assert report.counts.pairings == 1
        assert report.counts.assignments == 3

    def test_two_dimensional_even_part_is_empty(self) -> None:
        """Filiform actions exist but no equivariant pairing is non-degenerate."""
        report = search.small_search_nonexistence(2)
        assert report.empty
        assert report.counts.filiform == 8
        assert report.counts.pairings == 0

    def test_heisenberg_even_part_is_empty(self) -> None:
        """The three-dimensional ansatz has no survivors either."""
        assert search.small_search_nonexistence(3).empty

    def test_unsupported_dimension(self) -> None:
        """Only ``n_even <= 3`` has an ansatz."""
        with pytest.raises(UnsupportedRequestError, match="no search ansatz"):
            search.small_search_nonexistence(4)

    def test_grid_must_contain_signs(self) -> None:
        """-1, 0 and 1 are mandatory grid values."""
        with pytest.raises(UnsupportedRequestError, match="must contain -1, 0 and 1"):
            search.small_search_nonexistence(1, (Fraction(0), Fraction(1)))

    def test_limit(self) -> None:
        """Oversized assignment spaces are refused up front."""
        with pytest.raises(UnsupportedRequestError, match="examine 3 assignments"):
            search.small_search_nonexistence(1, limit=2)


class TestStages:
    """Individual search stages."""

    def test_even_candidates_are_nilpotent(self) -> None:
        """Only the abelian plane survives the two-dimensional ansatz."""
        assert search.even_candidates(2, search.DEFAULT_GRID) == [
            {(0, 1): {0: Fraction(0), 1: Fraction(0)}}
        ]

    @pytest.mark.parametrize(
        "key", ["g6:0", "g8:0", "example_dualpair:4", "example_coadjoint:5"]
    )
    def test_nilpotent_codimension(self, key: str) -> None:
        """Nilpotent even parts of dimension two or more have ``dim g/[g,g] >= 2``."""
        alg = catalog.build(key).algebra
        derived = core.derived_algebra(alg, restrict_to_even=True)
        assert alg.n_even - derived.dim >= 2

    def test_equivariant_pairings_of_line(self) -> None:
        """The zero action on a line leaves every pairing equivariant."""
        zero = ((Fraction(0),),)
        kernel = search.equivariant_pairings({}, [zero])
        assert len(kernel) == 1
        assert search.generically_nondegenerate(kernel, 1)
