"""Tests for odd forms and the odd-quadratic condition."""

from __future__ import annotations

from fractions import Fraction

import pytest

from oddquad import catalog, core, forms, linalg
from oddquad.errors import FormError, GradingError
from oddquad.forms import OddForm

FORMED_KEYS = (
    "abelian2",
    "example_dualpair:4",
    "example_coadjoint:4",
    "g6:0",
    "g6:1",
    "g8:0",
    "g8:1",
    "g8:2",
)


class TestOddForm:
    """Evaluating and building forms."""

    def test_values_are_supersymmetric(self, g6_0: catalog.CatalogEntry) -> None:
        """``B(X1, v2) = B(v2, X1)`` and equal parities pair to zero."""
        alg, form = g6_0.algebra, g6_0.form
        assert form is not None
        x1, v2 = alg.unit("X1"), alg.unit("v2")
        assert forms.evaluate(form, x1, v2) == 1
        assert forms.evaluate(form, v2, x1) == 1
        assert forms.evaluate(form, x1, alg.unit("X2")) == 0

    def test_scaled(self, g6_0: catalog.CatalogEntry) -> None:
        """Scaling multiplies every value."""
        alg, form = g6_0.algebra, g6_0.form
        assert form is not None
        doubled = form.scaled(2)
        assert doubled.value(alg.unit("X3"), alg.unit("e3")) == 2

    def test_same_parity_entry_raises(self, g6_0: catalog.CatalogEntry) -> None:
        """An odd form never pairs two even vectors."""
        with pytest.raises(GradingError, match="must pair even with odd"):
            OddForm.from_entries(g6_0.algebra, {("X1", "X2"): 1})

    def test_bad_shape_raises(self) -> None:
        """The pairing matrix is ``n_even x m_odd``."""
        with pytest.raises(FormError, match="1x1"):
            OddForm(1, 1, linalg.matrix([[1, 2]]))


class TestOddQuadratic:
    """Invariance and non-degeneracy certificates."""

    @pytest.mark.parametrize("key", FORMED_KEYS)
    def test_catalog_forms_are_odd_quadratic(self, key: str) -> None:
        """Every catalog form is invariant and non-degenerate."""
        entry = catalog.build(key)
        assert entry.form is not None
        certificate = forms.verify_odd_quadratic(entry.algebra, entry.form)
        assert certificate.passed, f"{key} fails {certificate.failures()}"

    def test_missing_entry_breaks_invariance(self, g6_0: catalog.CatalogEntry) -> None:
        """Dropping ``B(X3, e3)`` breaks ``B([X1,X2],e3) = B(X1,[X2,e3])``."""
        alg = g6_0.algebra
        form = OddForm.from_entries(alg, {("X1", "v2"): 1, ("X2", "u2"): -1})
        certificate = forms.verify_odd_quadratic(alg, form)
        invariance = certificate.get("invariance")
        assert not invariance.passed
        assert any("B([X1,X2],e3)" in line for line in invariance.witness), (
            f"witness should name the broken triple: {invariance.witness}"
        )
        assert certificate.failures() == ["invariance", "non-degeneracy"]

    def test_zero_form_is_degenerate(self, abelian: catalog.CatalogEntry) -> None:
        """The zero form is invariant but degenerate."""
        certificate = forms.verify_odd_quadratic(
            abelian.algebra, OddForm.zero(abelian.algebra)
        )
        assert certificate.get("invariance").passed
        assert certificate.get("non-degeneracy").witness == ("pairing rank 0",)

    def test_require_raises(self, abelian: catalog.CatalogEntry) -> None:
        """The raising variant names its context."""
        with pytest.raises(FormError, match="catalog: algebra and form"):
            forms.require_odd_quadratic(
                abelian.algebra, OddForm.zero(abelian.algebra), "catalog"
            )

    def test_phi_module(self, g6_0: catalog.CatalogEntry) -> None:
        """``B`` identifies ``g0`` with ``g1*`` as ``g0``-modules."""
        assert g6_0.form is not None
        assert forms.phi_module_check(g6_0.algebra, g6_0.form).passed

    def test_phi_symmetry_on_odd_triples(self) -> None:
        """An equivariant bijection can still break the odd-triple symmetry."""
        alg = core.SuperAlgebra.from_brackets(
            ("X1", "X2"), ("e1", "e2"), {("e1", "e1"): {"X2": 1}}
        )
        form = OddForm.from_entries(alg, {("X1", "e1"): 1, ("X2", "e2"): 1})
        assert not core.jacobi_violations(alg)
        certificate = forms.phi_module_check(alg, form)
        assert certificate.failures() == ["symmetry"]
        assert "phi([e1,e1])(e2) = 1 but phi([e1,e2])(e1) = 0" in (
            certificate.get("symmetry").witness
        )

    def test_phi_requires_matching_dimensions(self) -> None:
        """``g0`` and ``g1*`` cannot be isomorphic when the blocks differ."""
        alg = core.SuperAlgebra(("X1",), ("e1", "e2"))
        certificate = forms.phi_module_check(alg, OddForm.zero(alg))
        assert certificate.failures() == ["dimensions", "bijective"]
        assert certificate.get("dimensions").witness == ("n_even = 1, m_odd = 2",)


class TestSubspaces:
    """Orthogonals and ideal reports."""

    def test_center_is_lagrangian(self, g6_0: catalog.CatalogEntry) -> None:
        """The center of ``g6:0`` is its own orthogonal."""
        alg, form = g6_0.algebra, g6_0.form
        assert form is not None
        center = core.center(alg)
        complement = forms.orthogonal_complement(alg, form, center)
        assert complement.isotropic
        assert complement.space == center

    def test_ideal_report(self, g6_0: catalog.CatalogEntry) -> None:
        """The center is a graded isotropic ideal."""
        alg, form = g6_0.algebra, g6_0.form
        assert form is not None
        report = forms.ideal_report(alg, form, core.center(alg))
        assert report.get("graded ideal").passed
        assert report.get("isotropic").passed
        assert not report.get("non-degenerate").passed


class TestConstructions:
    """Transport and direct sums."""

    def test_transport_keeps_odd_quadratic(self, g6_0: catalog.CatalogEntry) -> None:
        """A form moved along a basis change stays invariant."""
        alg, form = g6_0.algebra, g6_0.form
        assert form is not None
        transform = linalg.diagonal([2, 1, 1, 1, 1, 3])
        image = core.change_basis(alg, transform)
        moved = forms.transport_form(alg, form, transform)
        assert forms.verify_odd_quadratic(image, moved).passed
        assert moved.value(image.unit("X1"), image.unit("v2")) == Fraction(1, 6)

    def test_direct_sum(self, abelian: catalog.CatalogEntry) -> None:
        """The orthogonal sum of two odd-quadratic algebras is odd-quadratic."""
        assert abelian.form is not None
        total, form = forms.direct_sum(
            abelian.algebra, abelian.algebra, abelian.form, abelian.form
        )
        assert (total.n_even, total.m_odd) == (2, 2)
        assert forms.verify_odd_quadratic(total, form).passed

    def test_direct_sum_rejects_degenerate(self, abelian: catalog.CatalogEntry) -> None:
        """Summands must be odd-quadratic."""
        assert abelian.form is not None
        with pytest.raises(FormError, match="left summand"):
            forms.direct_sum(
                abelian.algebra,
                abelian.algebra,
                OddForm.zero(abelian.algebra),
                abelian.form,
            )
