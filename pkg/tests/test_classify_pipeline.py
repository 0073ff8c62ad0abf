"""Tests for the dimension 6 and 8 classification pipelines."""

from __future__ import annotations

from fractions import Fraction

import pytest

from oddquad import catalog, flags
from oddquad.classify import classify_dimension, realize_branch
from oddquad.classify.fingerprint import verify_witness_isomorphism
from oddquad.classify.pipeline import (
    ClassificationReport,
    RowOutcome,
    consequence_gaps,
)
from oddquad.classify.tables import DIM6_PLAN, DIM8_PLAN, TableRow
from oddquad.errors import ClassificationError


@pytest.fixture(scope="module")
def report6() -> ClassificationReport:
    """Classify dimension 6 once per module."""
    return classify_dimension(6)


@pytest.fixture(scope="module")
def report8() -> ClassificationReport:
    """Classify dimension 8 once per module."""
    return classify_dimension(8)


def _outcome(
    report: ClassificationReport, kind: str, triple: tuple[str, str, str]
) -> RowOutcome:
    return next(
        outcome
        for outcome in report.rows
        if outcome.row.kind == kind and outcome.row.triple == triple
    )


class TestDimensionSix:
    """Row outcomes and classes in dimension 6."""

    def test_odd_cube_kills_a_and_b(self, report6: ClassificationReport) -> None:
        """``[e3, [e3, e3]] = 0`` forces ``a = b = 0``."""
        outcome = _outcome(report6, "jacobi", ("e3", "e3", "e3"))
        assert set(outcome.substitutions) == {"a", "b"}
        assert all(value.is_zero for value in outcome.substitutions.values())

    def test_invariance_rows(self, report6: ClassificationReport) -> None:
        """Invariance fixes the form entries one row at a time."""
        ring = report6.ring
        first = _outcome(report6, "invariance", ("X1", "X1", "e3"))
        assert first.substitutions == {"B_X1_u2": ring.zero}
        linked = _outcome(report6, "invariance", ("X1", "X2", "e3"))
        assert linked.substitutions == {"B_X1_v2": ring.gen("B_X3_e3")}

    def test_two_classes(self, report6: ClassificationReport) -> None:
        """``g6:0`` and ``g6:1`` with distinct fingerprints."""
        keys = [result.catalog_key for result in report6.classes]
        assert keys == ["g6:0", "g6:1"]
        assert len({result.fingerprint for result in report6.classes}) == 2

    def test_witnesses(self, report6: ClassificationReport) -> None:
        """Every witness carries the branch sample onto its catalog entry."""
        for result in report6.classes:
            target = catalog.build(result.catalog_key).algebra
            assert verify_witness_isomorphism(result.source, target, result.witness)

    def test_irrational_scale(self, report6: ClassificationReport) -> None:
        """``c = 2`` normalises through ``sqrt(2)`` onto ``g6:1``."""
        branch = report6.family.plan.branches[1]
        result = realize_branch(report6.family, branch, {"c": Fraction(2)})
        assert result.algebra.same_constants(catalog.build("g6:1").algebra)
        assert not result.witness[-1][-1].is_rational


class TestDimensionEight:
    """Row outcomes and classes in dimension 8."""

    def test_x2_e4_e4_row(self, report8: ClassificationReport) -> None:
        """``a44_1 = -d24*a44_2``."""
        ring = report8.ring
        outcome = _outcome(report8, "jacobi", ("X2", "e4", "e4"))
        assert outcome.substitutions["a44_1"] == ring.parse("-d24*a44_2")

    def test_e4_cube_row(self, report8: ClassificationReport) -> None:
        """``a44_3 = b24*a44_2`` and ``a44_2*(a24 + b24*d24)`` remains."""
        ring = report8.ring
        outcome = _outcome(report8, "jacobi", ("e4", "e4", "e4"))
        assert outcome.substitutions["a44_3"] == ring.parse("b24*a44_2")
        assert ring.parse("a44_2*(a24 + b24*d24)") in outcome.residuals, (
            f"residuals {[ring.render(poly) for poly in outcome.residuals]}"
        )

    def test_follow_up_rows(self, report8: ClassificationReport) -> None:
        """Non-degeneracy unlocks ``d24 = a24 = 0`` and ``a33_4 = -1/2*a44_2``."""
        ring = report8.ring
        expected = {
            ("X2", "X3", "e4"): {"d24": ring.zero},
            ("X2", "e4", "X2"): {"a24": ring.zero},
            ("e4", "e4", "u2"): {"a33_4": ring.parse("-1/2*a44_2")},
        }
        for triple, substitutions in expected.items():
            outcome = _outcome(report8, "invariance", triple)
            assert outcome.substitutions == substitutions, f"row {triple}"

    def test_solved_form(self, report8: ClassificationReport) -> None:
        """``B(X4, e4) = -B(X3, e3)`` and ``B(X3, e3)`` is assumed non-zero."""
        ring = report8.ring
        solution = report8.family.solution
        assert solution.substitutions["B_X4_e4"] == -ring.gen("B_X3_e3")
        assert ring.gen("B_X3_e3") in report8.nonzero

    def test_three_classes(self, report8: ClassificationReport) -> None:
        """``g8:0``, ``g8:1`` and ``g8:2`` are pairwise distinct."""
        keys = [result.catalog_key for result in report8.classes]
        assert keys == ["g8:0", "g8:1", "g8:2"]
        assert len({result.fingerprint for result in report8.classes}) == 3
        for result in report8.classes:
            assert flags.detect_weak_filiform(result.algebra).found
            target = catalog.build(result.catalog_key).algebra
            assert verify_witness_isomorphism(result.source, target, result.witness)


CLAIM_REPORTS = ("report6", "report8")


class TestRowConsequences:
    """Every table consequence follows from the substitutions in force."""

    @pytest.mark.parametrize("name", CLAIM_REPORTS)
    def test_every_row_holds(self, name: str, request: pytest.FixtureRequest) -> None:
        """No claim of any row is left unsupported by the walk."""
        report: ClassificationReport = request.getfixturevalue(name)
        skeleton = report.family.skeleton
        for outcome in report.rows:
            gaps = consequence_gaps(skeleton, outcome)
            assert not gaps, f"row {outcome.row.triple} misses {gaps}"

    def test_row_counts(
        self, report6: ClassificationReport, report8: ClassificationReport
    ) -> None:
        """Dimension 6 walks 6 + 6 rows and dimension 8 walks 1 + 12 + 13 + 3."""
        six = (DIM6_PLAN.jacobi_rows, DIM6_PLAN.invariance_rows)
        eight = (
            DIM8_PLAN.action_rows,
            DIM8_PLAN.jacobi_rows,
            DIM8_PLAN.invariance_rows,
            DIM8_PLAN.follow_up_rows,
        )
        assert [len(rows) for rows in six] == [6, 6]
        assert [len(rows) for rows in eight] == [1, 12, 13, 3]
        assert (len(report6.rows), len(report8.rows)) == (12, 29)

    def test_false_claim_is_reported(self, report6: ClassificationReport) -> None:
        """A claim the substitutions do not imply comes back as a gap."""
        first = report6.rows[0]
        row = TableRow("jacobi", ("e3", "e3", "e3"), "a = b = 0; c = 1")
        outcome = RowOutcome(row, {}, first.residuals, first.in_force)
        assert consequence_gaps(report6.family.skeleton, outcome) == ["c = 1"]

    def test_brackets_and_form_entries_expand(
        self, report6: ClassificationReport
    ) -> None:
        """``[u2,e3]`` and ``B(X1,v2)`` are read through the skeleton and form."""
        last = report6.rows[-1]
        skeleton = report6.family.skeleton
        claims = "[u2,e3] = 0; B(X3,e3) = B(X1,v2); [X1,e3] = u2; [X1,e3] = 0"
        outcome = RowOutcome(
            TableRow("invariance", ("X1", "X2", "e3"), claims),
            {},
            last.residuals,
            last.in_force,
        )
        assert consequence_gaps(skeleton, outcome) == ["[X1,e3] = 0"]


def test_unsupported_dimension() -> None:
    """Only dimensions 6 and 8 have a pipeline."""
    with pytest.raises(ClassificationError, match="dimension 7"):
        classify_dimension(7)
