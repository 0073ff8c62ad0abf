"""
Dimension-by-dimension classification of weak filiform odd-quadratic algebras.

:func:`classify_dimension` walks the constraint tables of a
:class:`~oddquad.classify.tables.ClassificationPlan` in order, records what
each row produced, completes the system with every remaining Jacobi and
invariance constraint, and realises each normal-form branch as an exact
algebra that is matched against the catalog.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import re
import typing as typ

import sympy

from oddquad import catalog, core, flags, forms, linalg
from oddquad.classify import elimination, params
from oddquad.classify.fingerprint import (
    Fingerprint,
    fingerprint,
    verify_witness_isomorphism,
)
from oddquad.classify.tables import (
    OddScale,
    Shear,
    plan_for,
)
from oddquad.errors import ClassificationError
from oddquad.scalar import adjoin_sqrt

if typ.TYPE_CHECKING:
    import collections.abc as cabc
    from fractions import Fraction

    from oddquad.classify.elimination import Elimination
    from oddquad.classify.params import ParamAlgebra, ParamForm, ParamRing, Poly
    from oddquad.classify.tables import (
        BranchPlan,
        ClassificationPlan,
        NormalStep,
        TableRow,
    )
    from oddquad.core import SuperAlgebra
    from oddquad.forms import OddForm
    from oddquad.linalg import Matrix

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, slots=True)
class RowOutcome:
    """
    What one table row established.

    Attributes
    ----------
    row : TableRow
        The triple and its expected consequence.
    substitutions : dict[str, Poly]
        Substitutions first made by this row, with their values right after it.
    residuals : tuple[Poly, ...]
        Residual constraints in force after the row.
    in_force : dict[str, Poly]
        Every substitution in force after the row.
    """

    row: TableRow
    substitutions: dict[str, Poly]
    residuals: tuple[Poly, ...]
    in_force: dict[str, Poly]


@dataclasses.dataclass(frozen=True, slots=True)
class ClassResult:
    """One isomorphism class, realised at the sample point of its branch."""

    label: str
    catalog_key: str
    condition: str
    sample: dict[str, Fraction]
    source: SuperAlgebra
    source_form: OddForm
    algebra: SuperAlgebra
    form: OddForm
    witness: Matrix
    fingerprint: Fingerprint


@dataclasses.dataclass(frozen=True)
class SolvedFamily:
    """The skeleton, the generic form and the substitutions that solve them."""

    plan: ClassificationPlan
    skeleton: ParamAlgebra
    form: ParamForm
    solution: Elimination

    @property
    def ring(self) -> ParamRing:
        """Return the coefficient ring."""
        return self.skeleton.ring


@dataclasses.dataclass(frozen=True)
class ClassificationReport:
    """Everything :func:`classify_dimension` derived for one dimension."""

    dim: int
    rows: tuple[RowOutcome, ...]
    jacobi_residuals: tuple[Poly, ...]
    family: SolvedFamily
    classes: tuple[ClassResult, ...]

    @property
    def ring(self) -> ParamRing:
        """Return the coefficient ring."""
        return self.family.ring

    @property
    def nonzero(self) -> tuple[Poly, ...]:
        """Return the factors assumed non-zero."""
        return self.family.solution.nonzero


_BRACKET: typ.Final = re.compile(r"\[(\w+),\s*(\w+)\]")
_FORM_ENTRY: typ.Final = re.compile(r"B\((\w+),\s*(\w+)\)")


def _claim_expr(skeleton: ParamAlgebra, text: str) -> sympy.Expr:
    ring = skeleton.ring

    def bracket(match: re.Match[str]) -> str:
        i, j = skeleton.index(match[1]), skeleton.index(match[2])
        terms = [
            f"({ring.render(value)})*{skeleton.names[k]}"
            for k, value in skeleton.basis_bracket(i, j).items()
        ]
        return f"({' + '.join(terms) or '0'})"

    def entry(match: re.Match[str]) -> str:
        return params.ParamForm.entry_name(match[1], match[2])

    expanded = _FORM_ENTRY.sub(entry, _BRACKET.sub(bracket, text))
    symbols = {name: sympy.Symbol(name) for name in (*ring.names, *skeleton.names)}
    return sympy.expand(sympy.sympify(expanded.replace("−", "-"), locals=symbols))


def _vanishes(ring: ParamRing, outcome: RowOutcome, expr: sympy.Expr) -> bool:
    reduced = ring.substitute(ring.from_expr(expr), outcome.in_force)
    if outcome.residuals:
        reduced = reduced.rem(list(outcome.residuals))
    return reduced.is_zero


def _claim_holds(skeleton: ParamAlgebra, outcome: RowOutcome, claim: str) -> bool:
    basis = [sympy.Symbol(name) for name in skeleton.names]
    sides = [_claim_expr(skeleton, side) for side in claim.split("=")]
    for left, right in itertools.pairwise(sides):
        difference = sympy.expand(left - right)
        parts = [difference.coeff(symbol) for symbol in basis]
        parts.append(difference.subs(dict.fromkeys(basis, 0)))
        if not all(_vanishes(skeleton.ring, outcome, part) for part in parts):
            return False
    return True


def consequence_gaps(skeleton: ParamAlgebra, outcome: RowOutcome) -> list[str]:
    """
    Return the claims of a row's consequence that its outcome does not imply.

    The consequence is a ``;``-separated list of chains such as ``a = b = 0``;
    brackets ``[x,y]`` are expanded in ``skeleton`` and ``B(x,y)`` names the
    generic form entry. A chain holds when every difference of neighbours
    reduces to zero under the substitutions in force after the row, modulo
    its residuals, coefficient by coefficient in the basis.
    """
    return [
        claim.strip()
        for claim in outcome.row.consequence.split(";")
        if not _claim_holds(skeleton, outcome, claim)
    ]


def _check_consequences(
    skeleton: ParamAlgebra, outcomes: cabc.Sequence[RowOutcome]
) -> None:
    for outcome in outcomes:
        gaps = consequence_gaps(skeleton, outcome)
        if gaps:
            row = outcome.row
            raise ClassificationError.false_consequence(
                f"{row.kind} row ({', '.join(row.triple)})",
                "; ".join(gaps),
            )
    logger.debug("%d row consequences confirmed", len(outcomes))


@dataclasses.dataclass
class _Walk:
    ring: ParamRing
    state: Elimination
    outcomes: list[RowOutcome] = dataclasses.field(default_factory=list)

    def apply(self, row: TableRow, constraints: cabc.Sequence[Poly]) -> None:
        before = self.state.substitutions
        self.state = elimination.eliminate(
            self.ring,
            [*constraints, *self.state.residuals],
            substitutions=before,
            nonzero=self.state.nonzero,
        )
        fresh = {
            name: value
            for name, value in self.state.substitutions.items()
            if name not in before
        }
        logger.debug(
            "row %s %s: %d new substitutions", row.kind, row.triple, len(fresh)
        )
        in_force = dict(self.state.substitutions)
        self.outcomes.append(RowOutcome(row, fresh, self.state.residuals, in_force))

    def assume_nonzero(self, factors: cabc.Sequence[Poly]) -> None:
        self.state = dataclasses.replace(
            self.state, nonzero=(*self.state.nonzero, *factors)
        )


def _check_even_part(plan: ClassificationPlan, ring: ParamRing) -> None:
    even = plan.even_algebra(ring).specialize({})
    if not core.is_nilpotent(even):
        raise ClassificationError.failed_check(
            f"even part of dimension {plan.dim}", "nilpotency"
        )
    if core.even_center(even).dim != 1:
        raise ClassificationError.failed_check(
            f"even part of dimension {plan.dim}", "one-dimensional center"
        )


def _walk_rows(
    plan: ClassificationPlan, skeleton: ParamAlgebra, form: ParamForm
) -> tuple[_Walk, tuple[Poly, ...], list[Poly]]:
    ring = skeleton.ring
    walk = _Walk(ring, elimination.Elimination({}))
    for row in (*plan.action_rows, *plan.jacobi_rows):
        walk.apply(row, params.jacobi_triple(skeleton, row.triple))
    jacobi_residuals = walk.state.residuals
    solved = skeleton.substitute(walk.state.substitutions)
    deferred = params.jacobi_constraints(solved)
    for row in plan.invariance_rows:
        walk.apply(row, params.invariance_triple(skeleton, form, row.triple))
    determinant = walk.state.apply(ring, form.determinant())
    if determinant.is_zero:
        raise ClassificationError.failed_check(
            f"dimension {plan.dim}", "non-degeneracy"
        )
    factors = elimination.nonconstant_factors(ring, determinant)
    logger.info(
        "dimension %d: non-degeneracy requires %s != 0",
        plan.dim,
        ", ".join(ring.render(factor) for factor in factors),
    )
    walk.assume_nonzero(factors)
    for row in plan.follow_up_rows:
        walk.apply(row, params.invariance_triple(skeleton, form, row.triple))
    return walk, jacobi_residuals, deferred


def classify_dimension(dim: int) -> ClassificationReport:
    """
    Classify weak filiform odd-quadratic algebras of dimension ``dim``.

    Parameters
    ----------
    dim : int
        Total dimension; 6 and 8 are supported.

    Returns
    -------
    ClassificationReport
        Row outcomes, the final substitutions and one verified class per
        normal-form branch.

    Raises
    ------
    ClassificationError
        For unsupported dimensions, residuals the elimination cannot split,
        or a branch that fails to reproduce its catalog entry.
    """
    plan = plan_for(dim)
    ring = plan.ring()
    _check_even_part(plan, ring)
    skeleton = plan.skeleton(ring)
    form = params.ParamForm.generic(skeleton)
    walk, jacobi_residuals, deferred = _walk_rows(plan, skeleton, form)
    _check_consequences(skeleton, walk.outcomes)
    substitutions = walk.state.substitutions
    completion = [
        *deferred,
        *params.invariance_constraints(
            skeleton.substitute(substitutions), form.substitute(substitutions)
        ),
        *walk.state.residuals,
    ]
    solutions = elimination.solve(
        ring, completion, substitutions=substitutions, nonzero=walk.state.nonzero
    )
    if len(solutions) != 1:
        raise ClassificationError.no_match(
            f"dimension {dim} ({len(solutions)} solution families)"
        )
    family = SolvedFamily(plan, skeleton, form, solutions[0])
    classes = tuple(realize_branch(family, branch) for branch in plan.branches)
    logger.info("dimension %d: %d classes", dim, len(classes))
    return ClassificationReport(
        dim, tuple(walk.outcomes), jacobi_residuals, family, classes
    )


def _step_transform(
    ring: ParamRing,
    current: SuperAlgebra,
    step: NormalStep,
    values: cabc.Mapping[str, Fraction],
) -> Matrix:
    match step:
        case Shear(replacements=replacements):
            new_basis = [
                linalg.vector(
                    ring.evaluate(replacements[name].get(other, "0"), values)
                    for other in current.names
                )
                if name in replacements
                else current.unit(name)
                for name in current.names
            ]
            _, transform = core.rebase(current, new_basis)
            return transform
        case OddScale(parameter=parameter):
            root = adjoin_sqrt(values[parameter]).root
            return linalg.diagonal([1] * current.n_even + [root] * current.m_odd)
    raise TypeError(step)


def _check_factors(
    label: str,
    ring: ParamRing,
    solution: Elimination,
    values: cabc.Mapping[str, Fraction],
) -> None:
    constants = {name: ring.constant(value) for name, value in values.items()}
    for factor in solution.nonzero:
        if ring.substitute(factor, constants).is_zero:
            raise ClassificationError.failed_check(
                label, f"non-zero factor {ring.render(factor)}"
            )


def _reverify(label: str, alg: SuperAlgebra, form: OddForm) -> None:
    checks = {
        "Jacobi identity": not core.jacobi_violations(alg),
        "odd-quadratic": forms.verify_odd_quadratic(alg, form).passed,
        "weak filiform": flags.detect_weak_filiform(alg).found,
        "nilpotency": core.is_nilpotent(alg),
        "even nilpotency": core.is_nilpotent(alg, restrict_to_even=True),
    }
    for check, passed in checks.items():
        if not passed:
            raise ClassificationError.failed_check(label, check)


def realize_branch(
    family: SolvedFamily,
    branch: BranchPlan,
    sample: cabc.Mapping[str, Fraction] | None = None,
) -> ClassResult:
    """
    Specialise the solved family on one branch and normalise it.

    The branch steps are applied in order; their coordinate transforms compose
    into the witness, which must carry the specialised algebra exactly onto the
    catalog entry. The result is then re-verified from scratch.

    Raises
    ------
    ClassificationError
        If a non-zero factor vanishes at the sample, the witness misses the
        catalog entry, or a re-verification check fails.
    """
    ring = family.ring
    solution = family.solution
    point = branch.sample if sample is None else sample
    values = {**family.plan.form_defaults(), **point}
    _check_factors(branch.label, ring, solution, values)
    source = family.skeleton.substitute(solution.substitutions).specialize(values)
    source_form = family.form.substitute(solution.substitutions).specialize(values)
    transform = linalg.identity(source.dim)
    current = source
    for step in branch.steps:
        step_transform = _step_transform(ring, current, step, values)
        current = core.change_basis(current, step_transform)
        transform = linalg.matmul(step_transform, transform)
    entry = catalog.build(branch.catalog_key)
    if not verify_witness_isomorphism(source, entry.algebra, transform):
        raise ClassificationError.no_match(branch.label)
    normal_form = forms.transport_form(source, source_form, transform)
    _reverify(branch.label, current, normal_form)
    logger.info("class %s matches %s", branch.label, branch.catalog_key)
    return ClassResult(
        label=branch.label,
        catalog_key=branch.catalog_key,
        condition=branch.condition,
        sample=values,
        source=source,
        source_form=source_form,
        algebra=current,
        form=normal_form,
        witness=transform,
        fingerprint=fingerprint(current),
    )
