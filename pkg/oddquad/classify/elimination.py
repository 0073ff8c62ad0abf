"""
Guided linear elimination with case splits on factored residuals.

:func:`eliminate` repeatedly picks the first constraint that is linear, with a
constant coefficient, in some indeterminate (the earliest such indeterminate
in ring order) and turns it into a substitution. Constraints that admit no
such pick are autoreduced and returned as residuals. :func:`solve` splits
residuals into disjoint branches ``f_1 = 0``, ``f_1 != 0 and f_2 = 0``, ...
over their factors.
"""

from __future__ import annotations

import dataclasses
import logging
import typing as typ

import sympy

from oddquad.errors import ClassificationError, EmptyBranchError

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.classify.params import ParamRing, Poly

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Elimination:
    """
    Substitutions in application order and the residual constraints.

    Attributes
    ----------
    substitutions : dict[str, Poly]
        ``name -> value``; values never mention substituted names.
    residuals : tuple[Poly, ...]
        Monic, autoreduced constraints that admit no linear pick.
    nonzero : tuple[Poly, ...]
        Factors assumed non-zero along the way.
    """

    substitutions: dict[str, Poly]
    residuals: tuple[Poly, ...] = ()
    nonzero: tuple[Poly, ...] = ()

    def apply(self, ring: ParamRing, poly: Poly) -> Poly:
        """Return ``poly`` after every substitution."""
        return ring.substitute(poly, self.substitutions)


@dataclasses.dataclass(frozen=True, slots=True)
class CaseBranch:
    """One disjoint branch of a case split."""

    zero: Poly
    nonzero: tuple[Poly, ...]


def _monic(poly: Poly) -> Poly:
    return poly.monic()


def nonconstant_factors(ring: ParamRing, poly: Poly) -> list[Poly]:
    """Return the distinct monic irreducible factors of ``poly``."""
    _, factors = sympy.factor_list(poly.as_expr())
    return [_monic(ring.from_expr(factor)) for factor, _ in factors]


def strip_factors(ring: ParamRing, poly: Poly, nonzero: cabc.Sequence[Poly]) -> Poly:
    """Divide out every factor of ``poly`` that is known to be non-zero."""
    if not nonzero or poly.is_zero or poly.is_ground:
        return poly
    known = {_monic(factor) for factor in nonzero}
    _, factors = sympy.factor_list(poly.as_expr())
    kept = ring.one
    stripped = False
    for factor, multiplicity in factors:
        element = ring.from_expr(factor)
        if _monic(element) in known:
            stripped = True
            continue
        kept *= element**multiplicity
    return kept if stripped else poly


def _linear_pick(ring: ParamRing, poly: Poly) -> tuple[str, Poly] | None:
    for name in ring.variables(poly):
        generator = ring.gen(name)
        if poly.degree(generator) != 1:
            continue
        coefficient = poly.diff(generator)
        if coefficient.is_ground and not coefficient.is_zero:
            value = (generator * coefficient - poly).quo_ground(coefficient.LC)
            return name, value
    return None


def autoreduce(ring: ParamRing, polys: cabc.Iterable[Poly]) -> tuple[Poly, ...]:
    """
    Return monic polynomials, each reduced modulo the others.

    Raises
    ------
    EmptyBranchError
        If a non-zero constant appears.
    """
    basis: list[Poly] = []
    for poly in polys:
        if poly.is_zero:
            continue
        if poly.is_ground:
            raise EmptyBranchError.constant_residual(ring.render(poly))
        monic = _monic(poly)
        if monic not in basis:
            basis.append(monic)
    changed = True
    while changed:
        changed = False
        for position, poly in enumerate(basis):
            others = basis[:position] + basis[position + 1 :]
            if not others:
                break
            remainder = poly.rem(others)
            if remainder == poly:
                continue
            if remainder.is_ground and not remainder.is_zero:
                raise EmptyBranchError.constant_residual(ring.render(remainder))
            basis = others if remainder.is_zero else [
                *basis[:position],
                _monic(remainder),
                *basis[position + 1 :],
            ]
            changed = True
            break
    return tuple(basis)


def _check_nonzero(ring: ParamRing, nonzero: cabc.Sequence[Poly]) -> None:
    for factor in nonzero:
        if factor.is_zero:
            raise EmptyBranchError.vanishing_factor(ring.render(factor))


def eliminate(
    ring: ParamRing,
    constraints: cabc.Iterable[Poly],
    *,
    substitutions: cabc.Mapping[str, Poly] | None = None,
    nonzero: cabc.Sequence[Poly] = (),
) -> Elimination:
    """
    Turn linear constraints into substitutions until none is left.

    Parameters
    ----------
    ring : ParamRing
        Ring of the constraints; its name order is the elimination preference.
    constraints : Iterable[Poly]
        Polynomials required to vanish.
    substitutions : Mapping[str, Poly], optional
        Substitutions already in force; they are extended, not replaced.
    nonzero : Sequence[Poly]
        Factors known to be non-zero; they are divided out of constraints.

    Returns
    -------
    Elimination
        The extended substitutions and the autoreduced residuals.

    Raises
    ------
    EmptyBranchError
        If a non-zero constant remains or a non-zero factor vanishes.
    """
    current = dict(substitutions or {})
    pending = list(constraints)
    factors = [ring.substitute(factor, current) for factor in nonzero]
    while True:
        _check_nonzero(ring, factors)
        reduced: list[Poly] = []
        for poly in pending:
            value = strip_factors(ring, ring.substitute(poly, current), factors)
            if value.is_zero:
                continue
            if value.is_ground:
                raise EmptyBranchError.constant_residual(ring.render(value))
            reduced.append(value)
        pending = reduced
        pick = next(
            (
                (position, found)
                for position, poly in enumerate(pending)
                if (found := _linear_pick(ring, poly)) is not None
            ),
            None,
        )
        if pick is None:
            break
        position, (name, value) = pick
        logger.debug("substituting %s := %s", name, ring.render(value))
        current = {
            key: ring.substitute(old, {name: value}) for key, old in current.items()
        }
        current[name] = value
        factors = [ring.substitute(factor, {name: value}) for factor in factors]
        pending.pop(position)
    return Elimination(current, autoreduce(ring, pending), tuple(factors))


def _splittable(ring: ParamRing, factor: Poly) -> bool:
    return _linear_pick(ring, factor) is not None


def case_split(ring: ParamRing, residual: Poly) -> list[CaseBranch]:
    """
    Split ``f_1^k1 ... f_r^kr = 0`` into disjoint factor branches.

    Branch ``i`` sets ``f_i = 0`` and assumes ``f_1 .. f_(i-1)`` non-zero.

    Raises
    ------
    ClassificationError
        If a factor is not linear, with constant coefficient, in any
        indeterminate.
    """
    factors = nonconstant_factors(ring, residual)
    for factor in factors:
        if not _splittable(ring, factor):
            raise ClassificationError.irreducible_residual(ring.render(residual))
    return [
        CaseBranch(factor, tuple(factors[:position]))
        for position, factor in enumerate(factors)
    ]


def solve(
    ring: ParamRing,
    constraints: cabc.Iterable[Poly],
    *,
    substitutions: cabc.Mapping[str, Poly] | None = None,
    nonzero: cabc.Sequence[Poly] = (),
) -> list[Elimination]:
    """
    Return one elimination without residuals per non-empty branch.

    Branches are explored depth first in factor order; empty branches are
    logged and dropped.
    """
    try:
        result = eliminate(
            ring, constraints, substitutions=substitutions, nonzero=nonzero
        )
    except EmptyBranchError as err:
        logger.info("dropping branch: %s", err)
        return []
    if not result.residuals:
        return [result]
    first, *rest = result.residuals
    solutions: list[Elimination] = []
    for branch in case_split(ring, first):
        logger.debug("branch %s = 0", ring.render(branch.zero))
        solutions.extend(
            solve(
                ring,
                [branch.zero, *rest],
                substitutions=result.substitutions,
                nonzero=(*result.nonzero, *branch.nonzero),
            )
        )
    return solutions
