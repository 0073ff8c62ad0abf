"""Tests for the named algebra catalog."""

from __future__ import annotations

import pytest

from oddquad import catalog, core, flags, forms
from oddquad.classify.fingerprint import fingerprint
from oddquad.errors import SchemaError


class TestEntries:
    """Every entry exhibits its recorded properties."""

    @pytest.mark.parametrize("key", catalog.CATALOG_KEYS)
    def test_jacobi(self, key: str) -> None:
        """Catalog entries are Lie superalgebras."""
        entry = catalog.build(key)
        assert core.jacobi_violations(entry.algebra) == [], key

    @pytest.mark.parametrize("key", catalog.CATALOG_KEYS)
    def test_center_dimensions(self, key: str) -> None:
        """``(total, even, odd)`` center dimensions match the record."""
        entry = catalog.build(key)
        facts = fingerprint(entry.algebra)
        observed = (facts.center_dim, facts.center_even, facts.center_odd)
        assert observed == entry.expected.center_dims, f"{key}: {observed}"

    @pytest.mark.parametrize("key", catalog.CATALOG_KEYS)
    def test_chain_and_flag(self, key: str) -> None:
        """Weak filiform entries have the recorded bracket chain."""
        entry = catalog.build(key)
        detection = flags.detect_weak_filiform(entry.algebra)
        assert detection.found == entry.expected.weak_filiform, key
        if entry.expected.weak_filiform:
            assert detection.chain_dims == entry.expected.chain_dims

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_dualpair_matches_coadjoint_formula(self, m: int) -> None:
        """The written-out table agrees with the cotangent construction."""
        entry = catalog.example_dualpair(m)
        assert entry.algebra.dim == 2 * m
        assert flags.detect_weak_filiform(entry.algebra).chain_dims == tuple(
            flags.weak_filiform_shape(m)
        )

    def test_g6_parameters(self) -> None:
        """``lambda``, ``alpha`` and ``beta`` land in the form."""
        entry = catalog.build("g6:1,2,3,-1")
        alg, form = entry.algebra, entry.form
        assert form is not None
        assert form.value(alg.unit("X3"), alg.unit("e3")) == 2
        assert form.value(alg.unit("X1"), alg.unit("e3")) == 3
        assert form.value(alg.unit("X2"), alg.unit("e3")) == -1



class TestExampleFamilies:
    """The coadjoint and dual-pair families for every supported size."""

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    @pytest.mark.parametrize("family", ["example_coadjoint", "example_dualpair"])
    def test_every_expected_property(self, family: str, m: int) -> None:
        """Center, chain, flag, form and Jacobi all match the record."""
        entry = catalog.build(f"{family}:{m}")
        alg, expected = entry.algebra, entry.expected
        assert entry.form is not None
        center = core.center(alg)
        assert (center.dim, *core.graded_dims(alg, center)) == expected.center_dims
        detection = flags.detect_weak_filiform(alg)
        assert detection.chain_dims == expected.chain_dims
        assert expected.chain_dims == (*range(m, 1, -1), 0)
        assert detection.found is expected.weak_filiform
        verdict = forms.verify_odd_quadratic(alg, entry.form).passed
        assert verdict is expected.odd_quadratic
        assert (not core.jacobi_violations(alg)) is expected.jacobi_valid

class TestKeys:
    """Parsing of catalog keys."""

    @pytest.mark.parametrize(
        "key", ["model_filiform:2", "g6:2", "g8:0,0", "unknown", "abelian2:1", "g6:x"]
    )
    def test_invalid_keys_raise(self, key: str) -> None:
        """Unknown names and out-of-range parameters are schema errors."""
        with pytest.raises(SchemaError, match="unknown catalog key"):
            catalog.build(key)

    def test_unicode_minus_parameter(self) -> None:
        """Parameters accept U+2212."""
        entry = catalog.build("g8:2,−1")
        assert entry.form is not None
        alg = entry.algebra
        assert entry.form.value(alg.unit("X4"), alg.unit("e4")) == 1

    @pytest.mark.parametrize(
        ("key", "expected"),
        [
            ("g6:1", "g6:1"),
            ("g6:1,2,3,-1", "g6:1,2,3,-1"),
            ("g6:0,1/2", "g6:0,1/2,0,0"),
            ("g8:2,1,0,0", "g8:2"),
            ("g8:2,−1", "g8:2,-1,0,0"),
        ],
    )
    def test_entry_key_keeps_form_parameters(self, key: str, expected: str) -> None:
        """Non-default ``lambda, alpha, beta`` survive in the entry key."""
        entry = catalog.build(key)
        assert entry.key == expected
        assert catalog.build(entry.key).form == entry.form
