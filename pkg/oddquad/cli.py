"""
Command-line interface for odd-quadratic Lie superalgebras.

Usage
-----
python -m oddquad verify ALGEBRA.json
python -m oddquad analyze ALGEBRA.json
python -m oddquad extend ALGEBRA.json DATA.json
python -m oddquad decompose ALGEBRA.json [--tower]
python -m oddquad derivations ALGEBRA.json
python -m oddquad catalog list | emit KEY
python -m oddquad classify --dim {6,8}
python -m oddquad search --n-even {1,2,3} [--grid "-1,0,1"]

Every verb accepts ``--emit-json``; ``-v`` and ``-vv`` raise the log level.

Exit codes
----------
0
    Every requested check passed.
1
    A verification failed.
2
    An input could not be parsed or violates a precondition.
3
    An internal inconsistency, such as a construction failing its own checks.
"""

from __future__ import annotations

import argparse
import logging
import sys
import typing as typ
from fractions import Fraction
from pathlib import Path

from oddquad import (
    catalog,
    core,
    derivations,
    extensions,
    flags,
    forms,
    interchange,
    reports,
)
from oddquad.certificates import Certificate, Check
from oddquad.classify import fingerprint as fingerprints
from oddquad.classify import pipeline, search
from oddquad.errors import (
    ClassificationError,
    ExtensionFault,
    OddQuadError,
    SchemaError,
    UnsupportedRequestError,
)

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra
    from oddquad.forms import OddForm

logger = logging.getLogger(__name__)

EXIT_OK: typ.Final = 0
EXIT_FAILED: typ.Final = 1
EXIT_INPUT: typ.Final = 2
EXIT_FAULT: typ.Final = 3


def _write(text: str | bytes) -> None:
    if isinstance(text, bytes):
        sys.stdout.write(text.decode("utf-8"))
    else:
        print(text)


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as err:
        raise SchemaError.unreadable(str(path), err) from err


def _load(path: Path) -> tuple[SuperAlgebra, OddForm | None]:
    return interchange.load_algebra(_read(path), str(path))


def _require_form(path: Path) -> tuple[SuperAlgebra, OddForm]:
    alg, form = _load(path)
    if form is None:
        raise SchemaError.missing_form(str(path))
    return alg, form


def _verify(args: argparse.Namespace) -> int:
    alg, form = _load(args.algebra)
    violations = [
        f"J({', '.join(violation.triple)}) = {alg.describe(violation.residual)}"
        for violation in core.jacobi_violations(alg)
    ]
    checks = [Check.from_violations("jacobi", violations)]
    if form is not None:
        checks.extend(forms.verify_odd_quadratic(alg, form).checks)
    certificate = Certificate(str(args.algebra), tuple(checks))
    if args.emit_json:
        _write(interchange.dump_certificate(certificate))
    else:
        _write(reports.render_certificate(certificate))
    return EXIT_OK if certificate.passed else EXIT_FAILED


def _analyze(args: argparse.Namespace) -> int:
    alg, _ = _load(args.algebra)
    facts = fingerprints.fingerprint(alg)
    detection = flags.detect_weak_filiform(alg)
    if args.emit_json:
        _write(interchange.dump_analysis(alg, facts, detection))
        return EXIT_OK
    lines = [
        f"center: {facts.center_dim} "
        f"({facts.center_even} even, {facts.center_odd} odd)",
        f"lower central series: {list(facts.series)}",
        f"even lower central series: {list(facts.even_series)}",
        f"bracket chain: {list(facts.chain)}",
        f"odd square rank: {facts.odd_square_rank}",
        f"nilpotent: {core.is_nilpotent(alg)}",
        f"filiform: {flags.detect_filiform(alg)}",
        f"weak filiform: {detection.found}",
    ]
    if detection.flag is not None:
        lines.extend(
            f"  e{index} = {alg.describe(vector)}"
            for index, vector in enumerate(detection.flag.representatives, start=3)
        )
    _write("\n".join(lines))
    return EXIT_OK


def _extend(args: argparse.Namespace) -> int:
    alg, form = _require_form(args.algebra)
    data = interchange.load_extension_data(_read(args.data), alg, str(args.data))
    detection = flags.detect_weak_filiform(alg)
    if detection.flag is None:
        _write(f"{args.algebra}: not weak filiform, chain {detection.chain_dims}")
        return EXIT_FAILED
    certificate = derivations.validate_extension_data(alg, form, data, detection.flag)
    if not certificate.passed:
        _write(reports.render_certificate(certificate))
        return EXIT_FAILED
    result = extensions.generalized_odd_double_extension(alg, form, data)
    if args.emit_json:
        _write(interchange.dump_algebra(result.algebra, result.form))
    else:
        _write(reports.render_algebra(result.algebra, result.form))
    return EXIT_OK


def _decompose(args: argparse.Namespace) -> int:
    alg, form = _require_form(args.algebra)
    if args.tower:
        steps = extensions.decomposition_tower(alg, form)
    else:
        detection = flags.detect_weak_filiform(alg)
        if detection.flag is None:
            _write(f"{args.algebra}: not weak filiform, chain {detection.chain_dims}")
            return EXIT_FAILED
        steps = [extensions.decompose_weak_filiform(alg, form, detection.flag)]
    if args.emit_json:
        _write(interchange.dump_decompositions(steps))
        return EXIT_OK
    for depth, step in enumerate(steps, start=1):
        _write(f"step {depth}: dimension {step.algebra.dim}")
        _write(reports.render_algebra(step.algebra, step.form))
        _write(reports.render_extension_data(step.algebra, step.data))
    return EXIT_OK


def _derivations(args: argparse.Namespace) -> int:
    alg, form = _require_form(args.algebra)
    basis = derivations.solve_odd_skew_derivations(alg, form)
    if args.emit_json:
        _write(interchange.dump_derivations(alg, basis))
    else:
        _write(reports.render_derivations(alg, basis))
    return EXIT_OK


def _catalog(args: argparse.Namespace) -> int:
    if args.action == "list":
        if args.emit_json:
            _write(interchange.dump_keys(catalog.CATALOG_KEYS))
        else:
            _write("\n".join(catalog.CATALOG_KEYS))
        return EXIT_OK
    if args.key is None:
        raise SchemaError.catalog_key("")
    entry = catalog.build(args.key)
    _write(interchange.dump_algebra(entry.algebra, entry.form))
    return EXIT_OK


def _classify(args: argparse.Namespace) -> int:
    report = pipeline.classify_dimension(args.dim)
    if args.emit_json:
        _write(interchange.dump_classification(report))
    else:
        _write(reports.render_classification(report))
    return EXIT_OK


def _search(args: argparse.Namespace) -> int:
    report = search.small_search_nonexistence(args.n_even, args.grid, limit=args.limit)
    if args.emit_json:
        _write(interchange.dump_search(report))
    else:
        _write(reports.render_search(report))
    return EXIT_OK


def parse_grid(text: str) -> tuple[Fraction, ...]:
    """Parse ``"-1,0,1"``; the grid must contain -1, 0 and 1."""
    try:
        values = tuple(
            Fraction(part.strip().replace("−", "-"))
            for part in text.split(",")
            if part.strip()
        )
    except (ValueError, ZeroDivisionError) as err:
        message = f"invalid grid {text!r}"
        raise argparse.ArgumentTypeError(message) from err
    if not {Fraction(-1), Fraction(0), Fraction(1)} <= set(values):
        message = f"grid {text!r} must contain -1, 0 and 1"
        raise argparse.ArgumentTypeError(message)
    return values


def _add_algebra(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("algebra", type=Path, help="algebra document (JSON)")


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser for every verb."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit-json", action="store_true", help="write JSON to stdout")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    parser = argparse.ArgumentParser(
        prog="oddquad", description=__doc__.splitlines()[1]
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    for name, handler, help_text in (
        ("verify", _verify, "check Jacobi and odd-quadratic conditions"),
        ("analyze", _analyze, "report center, series, chains and flag"),
        ("derivations", _derivations, "solve for odd skew derivations"),
    ):
        verb = verbs.add_parser(name, parents=[common], help=help_text)
        _add_algebra(verb)
        verb.set_defaults(handler=handler)

    extend = verbs.add_parser("extend", parents=[common], help="apply extension data")
    _add_algebra(extend)
    extend.add_argument("data", type=Path, help="extension data document (JSON)")
    extend.set_defaults(handler=_extend)

    decompose = verbs.add_parser(
        "decompose", parents=[common], help="undo one generalized extension"
    )
    _add_algebra(decompose)
    decompose.add_argument(
        "--tower", action="store_true", help="decompose to length two"
    )
    decompose.set_defaults(handler=_decompose)

    catalog_verb = verbs.add_parser("catalog", parents=[common], help="named algebras")
    catalog_verb.add_argument("action", choices=("list", "emit"))
    catalog_verb.add_argument("key", nargs="?", help="catalog key for emit")
    catalog_verb.set_defaults(handler=_catalog)

    classify = verbs.add_parser(
        "classify", parents=[common], help="classify a dimension"
    )
    classify.add_argument("--dim", type=int, choices=(6, 8), required=True)
    classify.set_defaults(handler=_classify)

    search_verb = verbs.add_parser(
        "search", parents=[common], help="small-grid non-existence search"
    )
    search_verb.add_argument("--n-even", type=int, choices=(1, 2, 3), required=True)
    search_verb.add_argument("--grid", type=parse_grid, default=search.DEFAULT_GRID)
    search_verb.add_argument("--limit", type=int, default=search.MAX_SEARCH_ASSIGNMENTS)
    search_verb.set_defaults(handler=_search)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity:
        level = logging.DEBUG if verbosity >= 2 else logging.INFO
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def main(argv: cabc.Sequence[str] | None = None) -> int:
    """
    Run one verb and return its exit code.

    Parameters
    ----------
    argv : collections.abc.Sequence[str] | None
        Command-line arguments, excluding the program name. ``None``
        (the default) reads :data:`sys.argv`.

    Returns
    -------
    int
        ``0`` when every requested check passes, ``1`` on a failed
        verification, ``2`` on unusable input and ``3`` on an internal fault.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except UnsupportedRequestError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (ExtensionFault, ClassificationError) as err:
        logger.debug("internal inconsistency", exc_info=True)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAULT
    except OddQuadError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
