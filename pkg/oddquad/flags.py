"""
The even part acting on the odd part: filiform and weak filiform flags.

The canonical chain is ``W0 = g1`` and ``W(k+1) = [g0, W(k)]``. The odd part is
weak filiform exactly when the chain dimensions are ``[m, m-1, ..., 2, 0]``,
and then ``V_i = W(m-i)``.
"""

from __future__ import annotations

import dataclasses
import typing as typ

from oddquad import core, linalg
from oddquad.certificates import Certificate, Check
from oddquad.forms import orthogonal_complement, require_odd_quadratic
from oddquad.linalg import Matrix, Subspace, Vector

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra
    from oddquad.forms import OddForm

NOT_APPLICABLE: typ.Final = "not applicable"
UNIQUE_CASE: typ.Final = "the unique case"
ODD_SQUARE_CASE: typ.Final = "one-dimensional even part with non-zero odd square"
CONTRADICTION: typ.Final = "contradiction"


@dataclasses.dataclass(frozen=True, slots=True)
class Flag:
    """
    A weak filiform flag ``g1 = V_m ⊃ ... ⊃ V_2 ⊃ V_1 = {0}``.

    Attributes
    ----------
    levels : tuple[Subspace, ...]
        ``V_m, V_(m-1), ..., V_2`` in ambient coordinates.
    representatives : tuple[Vector, ...]
        ``e_3, ..., e_m`` with ``V_i = V_(i-1) + span{e_i}``.
    """

    levels: tuple[Subspace, ...]
    representatives: tuple[Vector, ...]

    @property
    def length(self) -> int:
        """Return ``m``, the dimension of the odd part."""
        return self.levels[0].dim

    @property
    def u2(self) -> Vector:
        """Return the first echelon basis vector of ``V_2``."""
        return self.levels[-1].rows[0]

    @property
    def v2(self) -> Vector:
        """Return the second echelon basis vector of ``V_2``."""
        return self.levels[-1].rows[1]

    def level(self, index: int) -> Subspace:
        """Return ``V_index``; indices at most one give the zero subspace."""
        if index <= 1:
            return Subspace.zero(self.levels[0].ambient_dim)
        return self.levels[self.length - index]

    def representative(self, index: int) -> Vector:
        """Return ``e_index`` for ``3 <= index <= m``."""
        return self.representatives[index - 3]

    @property
    def top(self) -> Vector:
        """Return ``e_m``."""
        return self.representatives[-1]


@dataclasses.dataclass(frozen=True, slots=True)
class FlagDetection:
    """Outcome of weak filiform detection; ``flag`` is None on a negative verdict."""

    flag: Flag | None
    chain_dims: tuple[int, ...]

    @property
    def found(self) -> bool:
        """Return whether a flag exists."""
        return self.flag is not None


def _chain(
    step: cabc.Callable[[Subspace], Subspace], start: Subspace
) -> list[Subspace]:
    chain = [start]
    while True:
        following = step(chain[-1])
        if following == chain[-1]:
            return chain
        chain.append(following)


def bracket_chain(alg: SuperAlgebra) -> list[Subspace]:
    """Return the chain ``W(0) = g1, W(k+1) = [g0, W(k)]`` until it stabilises."""
    even = alg.even_subspace()
    return _chain(
        lambda space: core.bracket_spaces(alg, even, space), alg.odd_subspace()
    )


def bracket_chain_dims(alg: SuperAlgebra) -> list[int]:
    """Return the dimensions of :func:`bracket_chain`."""
    return [space.dim for space in bracket_chain(alg)]


def action_chain_dims(matrices: cabc.Sequence[Matrix], dim: int) -> list[int]:
    """Return chain dimensions for an arbitrary family of operators on ``Q^dim``."""

    def step(space: Subspace) -> Subspace:
        images = (linalg.matvec(op, row) for op in matrices for row in space.rows)
        return Subspace.span(images, dim)

    whole = Subspace.coordinates_range(dim, range(dim))
    return [space.dim for space in _chain(step, whole)]


def weak_filiform_shape(m: int) -> list[int]:
    """Return the chain dimensions ``[m, m-1, ..., 2, 0]``."""
    return [*range(m, 1, -1), 0]


def filiform_shape(m: int) -> list[int]:
    """Return the chain dimensions ``[m, m-1, ..., 1, 0]``."""
    return [*range(m, 0, -1), 0]


def detect_weak_filiform(alg: SuperAlgebra) -> FlagDetection:
    """
    Return the canonical weak filiform flag, or a negative verdict.

    Representatives ``e_i`` are the echelon rows of ``V_i`` whose pivot is new
    relative to ``V_(i-1)``.
    """
    chain = bracket_chain(alg)
    dims = tuple(space.dim for space in chain)
    m = alg.m_odd
    if m < 2 or list(dims) != weak_filiform_shape(m):
        return FlagDetection(None, dims)
    levels = tuple(chain[:-1])
    representatives: list[Vector] = []
    for index in range(3, m + 1):
        current = levels[m - index]
        lower_pivots = set(levels[m - index + 1].pivots)
        representatives.append(
            next(
                row
                for row, pivot in zip(current.rows, current.pivots, strict=True)
                if pivot not in lower_pivots
            )
        )
    return FlagDetection(Flag(levels, tuple(representatives)), dims)


def detect_filiform(alg: SuperAlgebra) -> bool:
    """Return whether the odd part is a filiform module over the even part."""
    return bracket_chain_dims(alg) == filiform_shape(alg.m_odd)


def odd_action(alg: SuperAlgebra) -> tuple[Matrix, ...]:
    """Return ``ad(a)`` restricted to ``g1`` for every even basis vector ``a``."""
    odd = range(alg.n_even, alg.dim)
    result: list[Matrix] = []
    for a in range(alg.n_even):
        columns = [
            core.to_dense(alg.basis_bracket(a, j), alg.dim)[alg.n_even :]
            for j in odd
        ]
        result.append(linalg.transpose(tuple(columns)) if columns else ())
    return tuple(result)


def dual_matrices(matrices: cabc.Sequence[Matrix]) -> tuple[Matrix, ...]:
    """Return ``-A^T`` for every ``A``; applying it twice is the identity."""
    return tuple(
        tuple(linalg.scale(row, -1) for row in linalg.transpose(op)) for op in matrices
    )


def dual_action(alg: SuperAlgebra) -> tuple[Matrix, ...]:
    """Return the contragredient action ``a . f = -f ∘ ad(a)`` on ``g1*``."""
    return dual_matrices(odd_action(alg))


def _even_chain_dims(alg: SuperAlgebra) -> list[int]:
    even = alg.even_subspace()
    chain = _chain(lambda space: core.bracket_spaces(alg, even, space), even)
    return [space.dim for space in chain]


def _is_abelian(alg: SuperAlgebra) -> bool:
    return not alg.entries


def nonexistence_certificate(alg: SuperAlgebra, form: OddForm) -> Certificate:
    """
    Explain why a filiform odd part cannot carry an odd-quadratic structure.

    For ``n_even >= 2`` the argument runs: the dual of a filiform module is
    filiform; ``x -> B(x, .)`` makes ``g0`` filiform over itself, forcing
    ``dim [g0, g0] = n - 1``; nilpotency forces ``dim g0 - dim [g0, g0] >= 2``.
    The certificate records each fact for the given input.
    """
    require_odd_quadratic(alg, form, "nonexistence certificate")
    if not detect_filiform(alg):
        dims = bracket_chain_dims(alg)
        return Certificate(
            "filiform nonexistence",
            (
                Check(
                    "filiform",
                    passed=True,
                    verdict=NOT_APPLICABLE,
                    witness=(f"chain {dims}",),
                ),
            ),
        )
    m = alg.m_odd
    dual_ok = action_chain_dims(dual_action(alg), m) == filiform_shape(m)
    derived = core.derived_algebra(alg, restrict_to_even=True).dim
    n = alg.n_even
    facts = (
        Check("dual filiform", passed=dual_ok),
        Check(
            "even part filiform over itself",
            passed=_even_chain_dims(alg) == filiform_shape(n) and derived == n - 1,
            witness=(f"dim [g0,g0] = {derived}",),
        ),
    )
    if n == 1:
        verdict = UNIQUE_CASE if _is_abelian(alg) else ODD_SQUARE_CASE
        return Certificate(
            "filiform nonexistence",
            (*facts, Check("one-dimensional even part", passed=True, verdict=verdict)),
        )
    codimension = n - derived
    return Certificate(
        "filiform nonexistence",
        (
            *facts,
            Check(
                "nilpotent codimension at least 2",
                passed=codimension >= 2
                and core.is_nilpotent(alg, restrict_to_even=True),
                witness=(f"dim g0 - dim [g0,g0] = {codimension}",),
            ),
            Check("verdict", passed=False, verdict=CONTRADICTION),
        ),
    )


def _center_checks(alg: SuperAlgebra, flag: Flag) -> tuple[Check, Check, Subspace]:
    center = core.center(alg)
    even_part = center.intersection(alg.even_subspace())
    odd_part = center.intersection(alg.odd_subspace())
    even_center = core.even_center(alg)
    check_a = Check(
        "even center",
        passed=even_part == even_center and even_part.dim == 1,
        witness=(
            f"dim z(g) ∩ g0 = {even_part.dim}",
            f"dim z(g0) = {even_center.dim}",
        ),
    )
    check_b = Check(
        "odd center in V2",
        passed=odd_part.is_subspace_of(flag.level(2)) and center.dim in {1, 2, 3},
        witness=(f"center dims ({even_part.dim} even, {odd_part.dim} odd)",),
    )
    return check_a, check_b, even_part


def _pairing_witness(
    alg: SuperAlgebra, form: OddForm, target: Vector, derived: Subspace
) -> str | None:
    """Return an even vector outside ``[g0,g0]`` pairing with ``target``."""
    outside = [
        alg.unit(index)
        for index in range(alg.n_even)
        if not derived.contains(alg.unit(index))
    ]
    for candidate in outside:
        if not form.value(candidate, target).is_zero:
            return alg.describe(candidate)
    inside = [
        alg.unit(index)
        for index in range(alg.n_even)
        if not form.value(alg.unit(index), target).is_zero
    ]
    if outside and inside:
        return alg.describe(linalg.add_vectors(outside[0], inside[0]))
    return None


def _pairing_checks(alg: SuperAlgebra, form: OddForm, flag: Flag) -> list[Check]:
    derived = core.derived_algebra(alg, restrict_to_even=True)
    checks: list[Check] = []
    for label, target in (("u2", flag.u2), ("v2", flag.v2)):
        witness = _pairing_witness(alg, form, target, derived)
        checks.append(
            Check(
                f"{label} pairs with g0 outside [g0,g0]",
                passed=witness is not None,
                witness=() if witness is None else (f"X = {witness}",),
            )
        )
    return checks


def _top_pairing_check(
    alg: SuperAlgebra, form: OddForm, flag: Flag, even_center: Subspace
) -> Check:
    if flag.length < 3 or even_center.dim != 1:
        return Check("B(e*, e_m) != 0", passed=True, verdict=NOT_APPLICABLE)
    value = form.value(even_center.rows[0], flag.top)
    return Check(
        "B(e*, e_m) != 0",
        passed=not value.is_zero,
        witness=(f"B({alg.describe(even_center.rows[0])}, "
                 f"{alg.describe(flag.top)}) = {value}",),
    )


def _descending_check(alg: SuperAlgebra, flag: Flag) -> Check:
    series = core.lower_central_series(alg, restrict_to_even=True)
    violations: list[str] = []
    for j, term in enumerate(series[1:], start=1):
        for i in range(2, flag.length + 1):
            image = core.bracket_spaces(alg, term, flag.level(i))
            if not image.is_subspace_of(flag.level(i - j - 1)):
                violations.append(f"[C^{j} g0, V{i}] not in V{i - j - 1}")
    return Check.from_violations("descending compatibility", violations)


def _center_perp_check(alg: SuperAlgebra, form: OddForm, flag: Flag) -> Check:
    even_center = core.even_center(alg)
    perp = orthogonal_complement(alg, form, even_center).space
    expected = alg.even_subspace().plus(flag.level(flag.length - 1))
    return Check("z(g0) orthogonal is g0 + V(m-1)", passed=perp == expected)


def flag_structure_report(alg: SuperAlgebra, form: OddForm, flag: Flag) -> Certificate:
    """
    Check the structural facts every weak filiform odd-quadratic algebra obeys.

    The checks cover the even center, the location of the odd center, the
    pairing of ``u2`` and ``v2`` with ``g0`` outside ``[g0, g0]``, the pairing
    of the central generator with ``e_m``, the descending compatibility
    ``[C^j g0, V_i] ⊆ V_(i-j-1)`` and the orthogonal of ``z(g0)``.
    """
    require_odd_quadratic(alg, form, "flag structure report")
    check_a, check_b, even_part = _center_checks(alg, flag)
    return Certificate(
        "flag structure",
        (
            check_a,
            check_b,
            *_pairing_checks(alg, form, flag),
            _top_pairing_check(alg, form, flag, even_part),
            _descending_check(alg, flag),
            _center_perp_check(alg, form, flag),
        ),
    )
