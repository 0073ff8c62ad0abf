"""Tests for double extensions and weak filiform decompositions."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from oddquad import catalog, core, extensions, flags, forms, linalg
from oddquad.derivations import ExtensionData, GradedMap
from oddquad.errors import ExtensionError, FlagError
from oddquad.scalar import Scalar

G8_KEYS = ("g8:0", "g8:1", "g8:2")
CASE_I: dict[str, dict[str, Fraction | int]] = {"X1": {"e3": -1}, "X3": {"v2": 1}}
CASE_III = {**CASE_I, "e3": {"X3": Fraction(1, 2)}}


def _decompose(key: str) -> tuple[catalog.CatalogEntry, extensions.Decomposition]:
    entry = catalog.build(key)
    assert entry.form is not None
    flag = flags.detect_weak_filiform(entry.algebra).flag
    assert flag is not None
    return entry, extensions.decompose_weak_filiform(entry.algebra, entry.form, flag)


def _corollary_data(case: str) -> ExtensionData:
    g6 = catalog.g6().algebra
    if case == "III":
        return ExtensionData.build(g6, CASE_III, {"X2": 1})
    data = ExtensionData.build(g6, CASE_I)
    if case == "II":
        return dataclasses.replace(data, lambda0=Scalar.of(-1))
    return data


def _onto_g8(t: core.SuperAlgebra) -> linalg.Matrix:
    """Send ``e*`` to ``-X4`` and ``e`` to ``e4``; the rest keeps its name."""
    g8 = catalog.g8().algebra
    added = {"e*": g8.vector({"X4": -1}), "e": g8.unit("e4")}
    columns = [added.get(name) or g8.unit(name) for name in t.names]
    return linalg.transpose(columns)


def _scaling_action(parity: int) -> extensions.DerivationAction:
    h = core.SuperAlgebra(("Z",), ())
    scaling = GradedMap(linalg.diagonal([1, -1]), parity)
    return extensions.DerivationAction(h, (scaling,))


class TestDecomposition:
    """Inverting the generalized odd double extension."""

    @pytest.mark.parametrize("key", G8_KEYS)
    def test_g8_decomposes_onto_g6(self, key: str) -> None:
        """Every ``g8`` variant is an extension of ``g6:0``."""
        _, step = _decompose(key)
        reference = catalog.g6()
        assert step.algebra.dim == 6
        assert step.algebra.same_constants(reference.algebra), (
            f"{key} decomposes onto {step.algebra.table}"
        )
        assert step.form == reference.form

    @pytest.mark.parametrize("key", G8_KEYS)
    def test_round_trip_through_the_witness(self, key: str) -> None:
        """Re-extending the pieces recovers the original constants."""
        entry, step = _decompose(key)
        rebuilt = extensions.generalized_odd_double_extension(
            step.algebra, step.form, step.data
        )
        identification = step.witness.identification
        assert identification is not None
        image = core.change_basis(rebuilt.algebra, identification)
        assert image.same_constants(entry.algebra)
        assert step.witness.e == entry.algebra.unit("e4")

    def test_tower(self) -> None:
        """``g8 -> g6 -> dimension 4`` and then the flag has length two."""
        entry = catalog.build("g8:0")
        assert entry.form is not None
        steps = extensions.decomposition_tower(entry.algebra, entry.form)
        assert [step.algebra.dim for step in steps] == [6, 4]
        assert steps[-1].flag.length == 2

    def test_short_flag_raises(self) -> None:
        """A flag of length two cannot be decomposed further."""
        entry = catalog.build("g6:0")
        assert entry.form is not None
        last = extensions.decomposition_tower(entry.algebra, entry.form)[-1]
        with pytest.raises(FlagError, match="below the required 3"):
            extensions.decompose_weak_filiform(last.algebra, last.form, last.flag)

    def test_tower_rejects_non_weak_filiform(
        self, abelian: catalog.CatalogEntry
    ) -> None:
        """The tower starts from a weak filiform algebra."""
        assert abelian.form is not None
        with pytest.raises(FlagError, match="not weak filiform"):
            extensions.decomposition_tower(abelian.algebra, abelian.form)


class TestGeneralizedExtension:
    """Building larger algebras from ``(D, X0, lambda0)``."""

    def test_extension_is_verified(self) -> None:
        """The output is odd-quadratic with a flag one step longer."""
        _, step = _decompose("g8:2")
        result = extensions.generalized_odd_double_extension(
            step.algebra, step.form, step.data, names=("Z", "f")
        )
        assert result.algebra.even[-1] == "Z"
        assert result.algebra.odd[-1] == "f"
        assert result.flag.length == 4
        assert forms.verify_odd_quadratic(result.algebra, result.form).passed
        assert result.witness.e == result.algebra.unit("f")

    @pytest.mark.parametrize(
        ("case", "key"), [("I", "g8:0"), ("II", "g8:1"), ("III", "g8:2")]
    )
    def test_corollary_data_builds_g8(self, case: str, key: str) -> None:
        """Each data set on ``g6:0`` gives its ``g8`` variant under ``e* -> -X4``."""
        g6 = catalog.g6()
        assert g6.form is not None
        result = extensions.generalized_odd_double_extension(
            g6.algebra, g6.form, _corollary_data(case)
        )
        target = catalog.build(key)
        identification = _onto_g8(result.algebra)
        image = core.change_basis(result.algebra, identification)
        assert image.same_constants(target.algebra), f"case {case} misses {key}"
        moved = forms.transport_form(result.algebra, result.form, identification)
        assert moved == target.form

    def test_invalid_data_raises(self, g6_0: catalog.CatalogEntry) -> None:
        """Zero data is rejected before anything is built."""
        assert g6_0.form is not None
        data = ExtensionData.build(g6_0.algebra, {})
        with pytest.raises(ExtensionError, match="invalid extension data"):
            extensions.generalized_odd_double_extension(g6_0.algebra, g6_0.form, data)

    def test_requires_weak_filiform(self, abelian: catalog.CatalogEntry) -> None:
        """The base must carry a weak filiform flag."""
        assert abelian.form is not None
        data = ExtensionData.build(abelian.algebra, {})
        with pytest.raises(FlagError, match="not weak filiform"):
            extensions.generalized_odd_double_extension(
                abelian.algebra, abelian.form, data
            )


class TestOddDoubleExtension:
    """Extensions by a Lie superalgebra of derivations."""

    def test_scaling_derivation(self, abelian: catalog.CatalogEntry) -> None:
        """``psi(Z) = diag(1, -1)`` gives a four-dimensional odd-quadratic algebra."""
        assert abelian.form is not None
        action = _scaling_action(0)
        algebra, form = extensions.odd_double_extension(
            abelian.algebra, abelian.form, action
        )
        assert (algebra.n_even, algebra.m_odd) == (2, 2)
        assert algebra.names == ("X", "Z", "e", "Z*")
        assert forms.verify_odd_quadratic(algebra, form).passed
        assert core.jacobi_violations(algebra) == []

    def test_non_abelian_h(self, abelian: catalog.CatalogEntry) -> None:
        """``[Z, W] = 2W`` acting on the abelian algebra gives ``[W, W*] = 2Z*``."""
        assert abelian.form is not None
        h = core.SuperAlgebra.from_brackets(("Z",), ("W",), {("Z", "W"): {"W": 2}})
        psi = (
            GradedMap(linalg.diagonal([1, -1]), 0),
            GradedMap(linalg.matrix([[0, 1], [0, 0]]), 1),
        )
        algebra, form = extensions.odd_double_extension(
            abelian.algebra, abelian.form, extensions.DerivationAction(h, psi)
        )
        assert algebra.names == ("X", "Z", "W*", "e", "W", "Z*")
        expected = {
            ("X", "e"): {"Z*": 1},
            ("e", "e"): {"W*": 1},
            ("Z", "W"): {"W": 2},
            ("Z", "X"): {"X": 1},
            ("Z", "e"): {"e": -1},
            ("W", "e"): {"X": 1},
            ("Z", "W*"): {"W*": -2},
            ("W", "W*"): {"Z*": 2},
        }
        for (left, right), value in expected.items():
            bracket = algebra.bracket(algebra.unit(left), algebra.unit(right))
            assert bracket == algebra.vector(value), f"[{left}, {right}]"
        assert core.jacobi_violations(algebra) == []
        assert forms.verify_odd_quadratic(algebra, form).passed

    def test_zero_h_returns_g(self, g6_0: catalog.CatalogEntry) -> None:
        """With ``h = 0`` nothing is added."""
        assert g6_0.form is not None
        action = extensions.DerivationAction(core.SuperAlgebra((), ()), ())
        algebra, form = extensions.odd_double_extension(g6_0.algebra, g6_0.form, action)
        assert algebra.names == g6_0.algebra.names
        assert algebra.same_constants(g6_0.algebra)
        assert form == g6_0.form

    def test_odd_line_matches_generalized(self, g6_0: catalog.CatalogEntry) -> None:
        """An odd one-dimensional ``h`` reproduces the ``X0 = 0`` extension."""
        assert g6_0.form is not None
        data = ExtensionData.build(g6_0.algebra, CASE_I)
        h = core.SuperAlgebra((), ("E",))
        action = extensions.DerivationAction(h, (data.derivation.as_graded(),))
        algebra, form = extensions.odd_double_extension(g6_0.algebra, g6_0.form, action)
        reference = extensions.generalized_odd_double_extension(
            g6_0.algebra, g6_0.form, data, names=("E*", "E")
        )
        assert algebra.names == reference.algebra.names
        assert algebra.same_constants(reference.algebra)
        assert form == reference.form

    def test_central_extension(self, abelian: catalog.CatalogEntry) -> None:
        """Dropping ``h`` leaves the central extension by ``P(h*)``."""
        assert abelian.form is not None
        action = _scaling_action(0)
        algebra = extensions.central_extension(abelian.algebra, abelian.form, action)
        assert (algebra.n_even, algebra.m_odd) == (1, 2)
        assert core.jacobi_violations(algebra) == []

    def test_wrong_parity_psi_raises(self, abelian: catalog.CatalogEntry) -> None:
        """``psi(Z)`` must have the parity of ``Z``."""
        assert abelian.form is not None
        action = _scaling_action(1)
        with pytest.raises(ExtensionError, match=r"psi\(Z\)"):
            extensions.odd_double_extension(abelian.algebra, abelian.form, action)

    def test_map_count_must_match(self, abelian: catalog.CatalogEntry) -> None:
        """One derivation per basis vector of ``h``."""
        assert abelian.form is not None
        h = core.SuperAlgebra(("Z", "W"), ())
        scaling = GradedMap(linalg.diagonal([1, -1]), 0)
        action = extensions.DerivationAction(h, (scaling,))
        with pytest.raises(ExtensionError, match="1 maps but h has dimension 2"):
            extensions.central_extension(abelian.algebra, abelian.form, action)
