"""
JSON documents for algebras, forms, extension data, witnesses and checks.

Scalars are written as ``"p/q"`` strings; elements of ``Q(sqrt(d))`` use
``{"a": "p/q", "b": "p/q", "d": "u/v"}`` for ``a + b*sqrt(d)``. Input accepts
both ASCII ``-`` and U+2212; output is ASCII. See
``docs/interchange-schema.md``.
"""

from __future__ import annotations

import dataclasses
import typing as typ
from fractions import Fraction

import msgspec as ms
import msgspec.json as msjson

from oddquad import core, flags
from oddquad.derivations import ExtensionData
from oddquad.errors import OddQuadError, ScalarError, SchemaError
from oddquad.forms import OddForm
from oddquad.scalar import Scalar, adjoin_sqrt

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.certificates import Certificate
    from oddquad.classify.fingerprint import Fingerprint
    from oddquad.classify.pipeline import ClassificationReport
    from oddquad.classify.search import SearchReport
    from oddquad.core import SuperAlgebra
    from oddquad.derivations import OddDerivation
    from oddquad.extensions import Decomposition
    from oddquad.flags import FlagDetection
    from oddquad.linalg import Matrix

_INPUT: typ.Final = "<input>"


class RadicalDoc(ms.Struct, forbid_unknown_fields=True):
    """``a + b*sqrt(d)``."""

    a: str
    b: str
    d: str


type ScalarValue = str | RadicalDoc


class BracketDoc(ms.Struct, forbid_unknown_fields=True):
    """``[x, y] = sum value[name] * name``."""

    x: str
    y: str
    value: dict[str, ScalarValue]


class FormEntryDoc(ms.Struct, forbid_unknown_fields=True):
    """``B(even, odd) = value``."""

    even: str
    odd: str
    value: ScalarValue


class AlgebraDoc(ms.Struct, forbid_unknown_fields=True, kw_only=True):
    """A superalgebra by basis names and non-zero brackets, with an optional form."""

    even: list[str]
    odd: list[str]
    brackets: list[BracketDoc] = []
    form: list[FormEntryDoc] | None = None


class ExtensionDataDoc(ms.Struct, forbid_unknown_fields=True, kw_only=True):
    """Data ``(D, X0, lambda0)`` with ``D`` given by named images."""

    derivation: dict[str, dict[str, ScalarValue]] = ms.field(name="D")
    x0: dict[str, ScalarValue] = ms.field(default_factory=dict, name="X0")
    lambda0: ScalarValue = "0"


class WitnessDoc(ms.Struct, forbid_unknown_fields=True):
    """A coordinate transform carrying ``source`` onto ``target``."""

    source: list[str]
    target: list[str]
    matrix: list[list[ScalarValue]]


class CheckDoc(ms.Struct):
    """One named verdict."""

    check: str
    passed: bool
    verdict: str
    witness: list[str] = []
    count: int = 0


class CertificateDoc(ms.Struct):
    """A titled bundle of checks."""

    subject: str
    passed: bool
    checks: list[CheckDoc]


class FingerprintDoc(ms.Struct):
    """Isomorphism invariants of one class."""

    center: tuple[int, int, int]
    series: list[int]
    even_series: list[int]
    odd_square_rank: int
    chain: list[int]


class ClassDoc(ms.Struct, kw_only=True):
    """One class emitted by the classification or the search."""

    label: str
    algebra: AlgebraDoc
    fingerprint: FingerprintDoc
    catalog_key: str | None = None
    condition: str | None = None
    witness: WitnessDoc | None = None


class AnalysisDoc(ms.Struct, kw_only=True):
    """Structural facts about one algebra."""

    fingerprint: FingerprintDoc
    nilpotent: bool
    filiform: bool
    weak_filiform: bool
    flag: list[str] | None = None


class DecompositionDoc(ms.Struct):
    """One step ``g = ext(h, D, X0, lambda0)`` and its identification with ``g``."""

    algebra: AlgebraDoc
    data: ExtensionDataDoc
    identification: list[list[ScalarValue]] | None


class DerivationsDoc(ms.Struct):
    """A basis of odd skew derivations by named images."""

    dimension: int
    basis: list[dict[str, dict[str, ScalarValue]]]


class ClassificationDoc(ms.Struct):
    """Classes of one dimension."""

    dim: int
    nonzero: list[str]
    classes: list[ClassDoc]


class SearchDoc(ms.Struct):
    """Outcome of a small-grid search."""

    n_even: int
    grid: list[str]
    hits: int
    classes: list[ClassDoc]


def _radical(doc: RadicalDoc) -> Scalar:
    radicand = Scalar.parse(doc.d).base
    if radicand == 0:
        raise ScalarError.zero_radicand()
    root = adjoin_sqrt(radicand).root
    return Scalar.parse(doc.a) + Scalar.parse(doc.b) * root


def parse_scalar(value: ScalarValue) -> Scalar:
    """
    Return the scalar a document value denotes.

    Rational square factors of a radicand move into the coefficient, so
    ``{"a": "0", "b": "1", "d": "8"}`` reads as ``2*sqrt(2)``.

    Raises
    ------
    SchemaError
        If a part is not a rational or the radicand is zero.
    """
    try:
        if isinstance(value, RadicalDoc):
            return _radical(value)
        return Scalar.parse(value)
    except OddQuadError as err:
        raise SchemaError.decode(_INPUT, err) from err


def scalar_value(scalar: Scalar) -> ScalarValue:
    """Return the document value of ``scalar``."""
    if scalar.is_rational:
        return str(scalar.base)
    return RadicalDoc(
        str(scalar.base), str(scalar.radical_coefficient), str(scalar.radicand)
    )


def _parse_map(values: cabc.Mapping[str, ScalarValue]) -> dict[str, Scalar]:
    return {name: parse_scalar(value) for name, value in values.items()}


def _decode[T](data: bytes, kind: type[T], source: str) -> T:
    try:
        return msjson.decode(data, type=kind)
    except (ms.ValidationError, ms.DecodeError) as err:
        raise SchemaError.decode(source, err) from err


def _encode(doc: ms.Struct) -> bytes:
    return msjson.format(msjson.encode(doc), indent=2) + b"\n"


def build_algebra(doc: AlgebraDoc) -> tuple[SuperAlgebra, OddForm | None]:
    """Build the algebra and form a decoded document describes."""
    brackets = {(entry.x, entry.y): _parse_map(entry.value) for entry in doc.brackets}
    algebra = core.SuperAlgebra.from_brackets(doc.even, doc.odd, brackets)
    if doc.form is None:
        return algebra, None
    entries = {(entry.even, entry.odd): parse_scalar(entry.value) for entry in doc.form}
    return algebra, OddForm.from_entries(algebra, entries)


def load_algebra(
    data: bytes, source: str = _INPUT
) -> tuple[SuperAlgebra, OddForm | None]:
    """
    Decode an algebra document.

    Raises
    ------
    SchemaError
        If the document does not match :class:`AlgebraDoc`, names are unknown
        or duplicated, or a bracket violates the grading.
    """
    doc = _decode(data, AlgebraDoc, source)
    try:
        return build_algebra(doc)
    except SchemaError:
        raise
    except OddQuadError as err:
        raise SchemaError.decode(source, err) from err


def algebra_doc(alg: SuperAlgebra, form: OddForm | None = None) -> AlgebraDoc:
    """Return the document of ``alg`` and its form."""
    names = alg.names
    brackets = [
        BracketDoc(
            names[i],
            names[j],
            {names[k]: scalar_value(value) for k, value in values},
        )
        for (i, j), values in alg.entries
        if values
    ]
    entries = None
    if form is not None:
        entries = [
            FormEntryDoc(alg.even[i], alg.odd[j], scalar_value(value))
            for i, row in enumerate(form.pairing)
            for j, value in enumerate(row)
            if not value.is_zero
        ]
    return AlgebraDoc(
        even=list(alg.even), odd=list(alg.odd), brackets=brackets, form=entries
    )


def dump_algebra(alg: SuperAlgebra, form: OddForm | None = None) -> bytes:
    """Encode ``alg`` and its form."""
    return _encode(algebra_doc(alg, form))


def load_extension_data(
    data: bytes, alg: SuperAlgebra, source: str = _INPUT
) -> ExtensionData:
    """
    Decode ``(D, X0, lambda0)`` against the basis names of ``alg``.

    Raises
    ------
    SchemaError
        If the document is malformed, names are unknown, or ``D`` or ``X0``
        has the wrong parity.
    """
    doc = _decode(data, ExtensionDataDoc, source)
    try:
        images = {name: _parse_map(image) for name, image in doc.derivation.items()}
        data = ExtensionData.build(alg, images, _parse_map(doc.x0))
        return dataclasses.replace(data, lambda0=parse_scalar(doc.lambda0))
    except SchemaError:
        raise
    except OddQuadError as err:
        raise SchemaError.decode(source, err) from err


def _images(
    images: cabc.Mapping[str, cabc.Mapping[str, Scalar]],
) -> dict[str, dict[str, ScalarValue]]:
    return {
        name: {target: scalar_value(value) for target, value in image.items()}
        for name, image in images.items()
    }


def extension_data_doc(alg: SuperAlgebra, data: ExtensionData) -> ExtensionDataDoc:
    """Return the document of extension data on ``alg``."""
    images = _images(data.derivation.describe(alg))
    x0 = {
        name: scalar_value(value)
        for name, value in zip(alg.names, data.x0, strict=True)
        if not value.is_zero
    }
    return ExtensionDataDoc(
        derivation=images, x0=x0, lambda0=scalar_value(data.lambda0)
    )


def dump_extension_data(alg: SuperAlgebra, data: ExtensionData) -> bytes:
    """Encode extension data with named images."""
    return _encode(extension_data_doc(alg, data))


def witness_doc(
    source: SuperAlgebra, target: SuperAlgebra, transform: Matrix
) -> WitnessDoc:
    """Return the document of a coordinate transform."""
    return WitnessDoc(
        list(source.names),
        list(target.names),
        [[scalar_value(entry) for entry in row] for row in transform],
    )


def load_witness(data: bytes, source: str = _INPUT) -> Matrix:
    """Decode the matrix of a witness document."""
    doc = _decode(data, WitnessDoc, source)
    return tuple(tuple(parse_scalar(entry) for entry in row) for row in doc.matrix)


def dump_witness(
    source: SuperAlgebra, target: SuperAlgebra, transform: Matrix
) -> bytes:
    """Encode a coordinate transform between two algebras."""
    return _encode(witness_doc(source, target, transform))


def certificate_doc(certificate: Certificate) -> CertificateDoc:
    """Return the document of a certificate."""
    return CertificateDoc(
        certificate.subject,
        certificate.passed,
        [
            CheckDoc(
                check.check,
                check.passed,
                check.verdict,
                list(check.witness),
                check.count,
            )
            for check in certificate.checks
        ],
    )


def dump_certificate(certificate: Certificate) -> bytes:
    """Encode a certificate."""
    return _encode(certificate_doc(certificate))


def fingerprint_doc(fingerprint: Fingerprint) -> FingerprintDoc:
    """Return the document of a fingerprint."""
    return FingerprintDoc(
        (fingerprint.center_dim, fingerprint.center_even, fingerprint.center_odd),
        list(fingerprint.series),
        list(fingerprint.even_series),
        fingerprint.odd_square_rank,
        list(fingerprint.chain),
    )


def dump_classification(report: ClassificationReport) -> bytes:
    """Encode the classes of a classification run."""
    classes = [
        ClassDoc(
            label=result.label,
            algebra=algebra_doc(result.algebra, result.form),
            fingerprint=fingerprint_doc(result.fingerprint),
            catalog_key=result.catalog_key,
            condition=result.condition,
            witness=witness_doc(result.source, result.algebra, result.witness),
        )
        for result in report.classes
    ]
    nonzero = [report.ring.render(factor) for factor in report.nonzero]
    return _encode(ClassificationDoc(report.dim, nonzero, classes))


def dump_search(report: SearchReport) -> bytes:
    """Encode the classes found by a search."""
    classes = [
        ClassDoc(
            label=f"class {position}",
            algebra=algebra_doc(hit.algebra, hit.form),
            fingerprint=fingerprint_doc(hit.fingerprint),
        )
        for position, hit in enumerate(report.classes, start=1)
    ]
    grid = [str(Fraction(value)) for value in report.grid]
    return _encode(SearchDoc(report.n_even, grid, len(report.hits), classes))


def dump_analysis(
    alg: SuperAlgebra, fingerprint: Fingerprint, detection: FlagDetection
) -> bytes:
    """Encode the structural facts reported by ``analyze``."""
    flag = None
    if detection.flag is not None:
        flag = [alg.describe(vector) for vector in detection.flag.representatives]
    return _encode(
        AnalysisDoc(
            fingerprint=fingerprint_doc(fingerprint),
            nilpotent=core.is_nilpotent(alg),
            filiform=flags.detect_filiform(alg),
            weak_filiform=detection.found,
            flag=flag,
        )
    )


def dump_decompositions(steps: cabc.Sequence[Decomposition]) -> bytes:
    """Encode decomposition steps, outermost first."""
    docs = [
        DecompositionDoc(
            algebra_doc(step.algebra, step.form),
            extension_data_doc(step.algebra, step.data),
            None
            if step.witness.identification is None
            else [
                [scalar_value(entry) for entry in row]
                for row in step.witness.identification
            ],
        )
        for step in steps
    ]
    return msjson.format(msjson.encode(docs), indent=2) + b"\n"


def dump_derivations(alg: SuperAlgebra, basis: cabc.Sequence[OddDerivation]) -> bytes:
    """Encode a basis of odd skew derivations."""
    images = [_images(derivation.describe(alg)) for derivation in basis]
    return _encode(DerivationsDoc(len(basis), images))


def dump_keys(keys: cabc.Sequence[str]) -> bytes:
    """Encode a list of catalog keys."""
    return msjson.format(msjson.encode(list(keys)), indent=2) + b"\n"
