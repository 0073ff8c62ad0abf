"""Plain-text reports printed by the command-line interface."""

from __future__ import annotations

import typing as typ

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.certificates import Certificate
    from oddquad.classify.fingerprint import Fingerprint
    from oddquad.classify.pipeline import ClassificationReport, RowOutcome
    from oddquad.classify.search import SearchReport
    from oddquad.core import SuperAlgebra
    from oddquad.derivations import ExtensionData, OddDerivation
    from oddquad.forms import OddForm


def table(headers: cabc.Sequence[str], rows: cabc.Iterable[cabc.Sequence[str]]) -> str:
    """Render rows under headers with left-aligned, padded columns."""
    body = [list(row) for row in rows]
    widths = [
        max(len(cell) for cell in column)
        for column in zip(headers, *body, strict=True)
    ]

    def line(cells: cabc.Sequence[str]) -> str:
        padded = (cell.ljust(width) for cell, width in zip(cells, widths, strict=True))
        return " | ".join(padded).rstrip()

    rule = "-+-".join("-" * width for width in widths)
    return "\n".join([line(headers), rule, *(line(row) for row in body)])


def render_certificate(certificate: Certificate) -> str:
    """Render one line per check, followed by its witnesses."""
    lines = [f"{certificate.subject}: {'pass' if certificate.passed else 'fail'}"]
    for check in certificate.checks:
        lines.append(f"  {check.check}: {check.verdict}")
        lines.extend(f"    {item}" for item in check.witness)
        if check.count > len(check.witness):
            lines.append(f"    ... {check.count - len(check.witness)} more")
    return "\n".join(lines)


def render_algebra(alg: SuperAlgebra, form: OddForm | None = None) -> str:
    """List the basis, the non-zero brackets and the non-zero form entries."""
    names = alg.names
    lines = [f"even: {', '.join(alg.even)}", f"odd:  {', '.join(alg.odd)}"]
    for (i, j), values in alg.entries:
        if values:
            terms = " + ".join(f"({value})*{names[k]}" for k, value in values)
            lines.append(f"[{names[i]}, {names[j]}] = {terms}")
    if form is not None:
        lines.extend(
            f"B({alg.even[i]}, {alg.odd[j]}) = {value}"
            for i, row in enumerate(form.pairing)
            for j, value in enumerate(row)
            if not value.is_zero
        )
    return "\n".join(lines)


def render_fingerprint(fingerprint: Fingerprint) -> str:
    """Render the invariants on one line."""
    return (
        f"center {fingerprint.center_dim} "
        f"({fingerprint.center_even} even, {fingerprint.center_odd} odd); "
        f"series {list(fingerprint.series)}; "
        f"even series {list(fingerprint.even_series)}; "
        f"odd square rank {fingerprint.odd_square_rank}; "
        f"chain {list(fingerprint.chain)}"
    )


def _terms(image: cabc.Mapping[str, object]) -> str:
    return " + ".join(f"({value})*{target}" for target, value in image.items())


def render_derivations(alg: SuperAlgebra, basis: cabc.Sequence[OddDerivation]) -> str:
    """Render a basis of odd skew derivations by named images."""
    lines = [f"dimension {len(basis)}"]
    for position, derivation in enumerate(basis, start=1):
        images = derivation.describe(alg)
        rendered = "; ".join(
            f"{name} -> {_terms(image)}"
            for name, image in images.items()
        )
        lines.append(f"  D{position}: {rendered or '0'}")
    return "\n".join(lines)


def _row_cells(report: ClassificationReport, outcome: RowOutcome) -> list[str]:
    ring = report.ring
    produced = ", ".join(
        f"{name} := {ring.render(value)}"
        for name, value in outcome.substitutions.items()
    )
    residual = ", ".join(ring.render(poly) for poly in outcome.residuals)
    return [
        outcome.row.kind,
        f"({', '.join(outcome.row.triple)})",
        outcome.row.consequence,
        produced or "-",
        residual or "-",
    ]


def render_classification(report: ClassificationReport) -> str:
    """Render the constraint table walk and the emitted classes."""
    rows = table(
        ("constraint", "triple", "consequence", "substitutions", "residuals"),
        (_row_cells(report, outcome) for outcome in report.rows),
    )
    nonzero = ", ".join(report.ring.render(factor) for factor in report.nonzero)
    lines = [f"dimension {report.dim}", rows, f"non-zero: {nonzero or '-'}"]
    for result in report.classes:
        lines.extend(
            [
                "",
                f"{result.label} ({result.condition}) = {result.catalog_key}",
                render_algebra(result.algebra, result.form),
                render_fingerprint(result.fingerprint),
            ]
        )
    lines.append(f"\n{len(report.classes)} classes")
    return "\n".join(lines)


def render_search(report: SearchReport) -> str:
    """Render stage counts and one line per class found."""
    counts = report.counts
    stages = table(
        ("stage", "count"),
        [
            ("even parts", str(counts.even_parts)),
            ("actions", str(counts.actions)),
            ("representations", str(counts.representations)),
            ("filiform", str(counts.filiform)),
            ("with pairing", str(counts.pairings)),
            ("assignments", str(counts.assignments)),
            ("hits", str(len(report.hits))),
        ],
    )
    grid = [str(value) for value in report.grid]
    lines = [f"n_even {report.n_even}, grid {grid}", stages]
    for position, hit in enumerate(report.classes, start=1):
        lines.extend(
            [
                "",
                f"class {position}",
                render_algebra(hit.algebra, hit.form),
                render_fingerprint(hit.fingerprint),
            ]
        )
    lines.append(f"\n{len(report.classes)} classes")
    return "\n".join(lines)


def render_extension_data(alg: SuperAlgebra, data: ExtensionData) -> str:
    """Render ``D`` by named images together with ``X0`` and ``lambda0``."""
    lines = [
        f"D({name}) = {_terms(image)}"
        for name, image in data.derivation.describe(alg).items()
    ]
    lines.append(f"X0 = {alg.describe(data.x0)}")
    lines.append(f"lambda0 = {data.lambda0}")
    return "\n".join(lines)
