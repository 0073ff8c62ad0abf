"""Tests for odd skew superderivations and extension data."""

from __future__ import annotations

from fractions import Fraction

import pytest

from oddquad import catalog, derivations, flags, linalg
from oddquad.derivations import ExtensionData, GradedMap, OddDerivation
from oddquad.errors import GradingError
from oddquad.extensions import decompose_weak_filiform
from oddquad.linalg import Subspace


type Images = dict[str, dict[str, Fraction | int]]

# parameters (a, b, c, f) of the g6:0 solutions
G6_FAMILY: dict[str, Images] = {
    "a": {"X1": {"e3": 1}, "X3": {"v2": -1}},
    "b": {"X2": {"e3": 1}, "X3": {"u2": 1}},
    "c": {"X1": {"u2": 1}, "X2": {"v2": 1}},
    "f": {"e3": {"X3": 1}},
}
CASE_I: Images = {"X1": {"e3": -1}, "X3": {"v2": 1}}
CASE_III = {**CASE_I, "e3": {"X3": Fraction(1, 2)}}


class TestSolver:
    """The linear solver for odd B-skew superderivations."""

    def test_g6_solution_space(self, g6_0: catalog.CatalogEntry) -> None:
        """The echelon basis spans exactly the ``(a, b, c, f)`` family of ``g6:0``."""
        assert g6_0.form is not None
        basis = derivations.solve_odd_skew_derivations(g6_0.algebra, g6_0.form)
        assert len(basis) == 4, f"got {len(basis)} solutions"
        for op in basis:
            violations = derivations.derivation_violations(
                g6_0.algebra, g6_0.form, op.as_graded()
            )
            assert violations == [], f"{op.describe(g6_0.algebra)}: {violations}"
        space = derivations.derivation_space(g6_0.algebra, g6_0.form)
        assert space.dim == 4
        family = [
            OddDerivation.from_images(g6_0.algebra, images).coordinates()
            for images in G6_FAMILY.values()
        ]
        assert tuple(op.coordinates() for op in basis) == Subspace.span(family, 18).rows

    def test_g6_membership(self, g6_0: catalog.CatalogEntry) -> None:
        """``-a`` lies in the family; ``X1 -> e3`` without ``X3 -> -v2`` does not."""
        assert g6_0.form is not None
        space = derivations.derivation_space(g6_0.algebra, g6_0.form)
        inside = OddDerivation.from_images(g6_0.algebra, CASE_I)
        outside = OddDerivation.from_images(g6_0.algebra, {"X1": {"e3": 1}})
        assert space.contains(inside.coordinates())
        assert not space.contains(outside.coordinates())

    def test_abelian_solution(self, abelian: catalog.CatalogEntry) -> None:
        """Skewness forces ``D(X) = 0`` and leaves ``D(e) = X`` free."""
        assert abelian.form is not None
        basis = derivations.solve_odd_skew_derivations(abelian.algebra, abelian.form)
        assert [op.describe(abelian.algebra) for op in basis] == [{"e": {"X": 1}}]


class TestMaps:
    """Graded maps and their residuals."""

    def test_supercommutator_of_odd_map(self, abelian: catalog.CatalogEntry) -> None:
        """``[D, D] = 2 D^2`` for odd ``D``."""
        op = OddDerivation.from_images(
            abelian.algebra, {"X": {"e": 1}, "e": {"X": 1}}
        ).as_graded()
        assert op.supercommutator(op).matrix == linalg.diagonal([2, 2])

    def test_even_maps_use_commutator(self) -> None:
        """Even maps use the ordinary commutator."""
        op = GradedMap(linalg.diagonal([1, -1]), 0)
        assert op.supercommutator(op).matrix == linalg.diagonal([0, 0])

    def test_leibniz_violation(self, g6_0: catalog.CatalogEntry) -> None:
        """``D(X1) = e3`` alone breaks Leibniz on ``(X1, X2)``."""
        op = OddDerivation.from_images(g6_0.algebra, {"X1": {"e3": 1}})
        violations = derivations.derivation_violations(
            g6_0.algebra, None, op.as_graded()
        )
        assert "Leibniz fails on (X1, X2)" in violations

    def test_image_parity_is_checked(self, g6_0: catalog.CatalogEntry) -> None:
        """An odd map sends even vectors to odd ones."""
        with pytest.raises(GradingError, match="wrong parity"):
            OddDerivation.from_images(g6_0.algebra, {"X1": {"X2": 1}})


class TestExtensionData:
    """Validation of ``(D, X0, lambda0)``."""

    def test_odd_x0_raises(self, g6_0: catalog.CatalogEntry) -> None:
        """``X0`` must be even."""
        with pytest.raises(GradingError, match="X0 must be homogeneous"):
            ExtensionData(OddDerivation.zero(g6_0.algebra), g6_0.algebra.unit("e3"))

    def test_zero_data_misses_the_top(self, g6_0: catalog.CatalogEntry) -> None:
        """Zero data satisfies every identity but cannot reach ``e_m``."""
        assert g6_0.form is not None
        flag = flags.detect_weak_filiform(g6_0.algebra).flag
        assert flag is not None
        data = ExtensionData.build(g6_0.algebra, {})
        certificate = derivations.validate_extension_data(
            g6_0.algebra, g6_0.form, data, flag
        )
        assert certificate.failures() == ["e_m in D(g0)"]

    @pytest.mark.parametrize("key", ["g8:0", "g8:1", "g8:2"])
    def test_decomposition_data_is_valid(self, key: str) -> None:
        """Data read off a decomposition passes validation on the smaller algebra."""
        entry = catalog.build(key)
        assert entry.form is not None
        flag = flags.detect_weak_filiform(entry.algebra).flag
        assert flag is not None
        step = decompose_weak_filiform(entry.algebra, entry.form, flag)
        certificate = derivations.validate_extension_data(
            step.algebra, step.form, step.data, step.flag
        )
        assert certificate.passed, f"{key}: {certificate.failures()}"



class TestCorollaryData:
    """The ``g6:0`` data sets that generate the three ``g8`` variants."""

    @pytest.mark.parametrize(
        "case",
        [
            (CASE_I, {}, []),
            (CASE_III, {"X2": 1}, []),
            ({}, {"X3": 1}, ["e_m in D(g0)"]),
            (CASE_III, {}, ["D^2 = 1/2 ad(X0)"]),
        ],
        ids=["case-I", "case-III", "zero-D", "case-III-without-X0"],
    )
    def test_validation(
        self, g6_0: catalog.CatalogEntry, case: tuple[Images, dict[str, int], list[str]]
    ) -> None:
        """Accepted data passes every check; rejected data names what breaks."""
        images, x0, failures = case
        assert g6_0.form is not None
        flag = flags.detect_weak_filiform(g6_0.algebra).flag
        assert flag is not None
        data = ExtensionData.build(g6_0.algebra, images, x0)
        certificate = derivations.validate_extension_data(
            g6_0.algebra, g6_0.form, data, flag
        )
        assert certificate.failures() == failures
