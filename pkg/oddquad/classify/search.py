"""
Exhaustive small-grid search for filiform odd-quadratic superalgebras.

The search fixes ``dim g1 = dim g0 = n`` and walks four stages:

1. even parts: ``n = 1`` is the line, ``n = 2`` enumerates
   ``[X1, X2] = p X1 + q X2`` over the grid, ``n = 3`` is the Heisenberg
   algebra; only nilpotent even parts go on;
2. odd actions: strictly upper triangular matrices over the grid that form a
   representation and make ``g1`` a filiform module;
3. pairings: the space of ``g0``-equivariant pairings ``g0 x g1 -> K``; when
   its generic member is degenerate the action is discarded;
4. odd-odd brackets over the grid, each candidate checked for the Jacobi
   identity, invariance, non-degeneracy and the filiform chain.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import typing as typ
from fractions import Fraction

import sympy

from oddquad import core, flags, forms, linalg
from oddquad.classify.fingerprint import Fingerprint, fingerprint
from oddquad.errors import UnsupportedRequestError
from oddquad.forms import OddForm

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra
    from oddquad.linalg import Vector

logger = logging.getLogger(__name__)

DEFAULT_GRID: typ.Final = (Fraction(-1), Fraction(0), Fraction(1))
MAX_SEARCH_ASSIGNMENTS: typ.Final = 100_000

type Square = tuple[tuple[Fraction, ...], ...]
type EvenTable = dict[tuple[int, int], dict[int, Fraction]]


@dataclasses.dataclass(frozen=True, slots=True)
class SearchHit:
    """An assignment that passed every check."""

    algebra: SuperAlgebra
    form: OddForm
    fingerprint: Fingerprint


@dataclasses.dataclass(slots=True)
class SearchCounts:
    """How many candidates reached each stage."""

    even_parts: int = 0
    actions: int = 0
    representations: int = 0
    filiform: int = 0
    pairings: int = 0
    assignments: int = 0


@dataclasses.dataclass(frozen=True, slots=True)
class SearchReport:
    """Outcome of :func:`small_search_nonexistence`."""

    n_even: int
    grid: tuple[Fraction, ...]
    counts: SearchCounts
    hits: tuple[SearchHit, ...]

    @property
    def classes(self) -> tuple[SearchHit, ...]:
        """Return the first hit of every distinct fingerprint."""
        seen: dict[Fingerprint, SearchHit] = {}
        for hit in self.hits:
            seen.setdefault(hit.fingerprint, hit)
        return tuple(seen.values())

    @property
    def empty(self) -> bool:
        """Return whether no assignment survived."""
        return not self.hits


def _even_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1))


def _odd_names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(1, n + 1))


def even_candidates(n_even: int, grid: cabc.Sequence[Fraction]) -> list[EvenTable]:
    """Return the even tables of the ansatz, nilpotent ones only."""
    match n_even:
        case 1:
            tables: list[EvenTable] = [{}]
        case 2:
            tables = [
                {(0, 1): {0: p, 1: q}} for p, q in itertools.product(grid, repeat=2)
            ]
        case 3:
            tables = [{(0, 1): {2: Fraction(1)}}]
        case _:
            raise UnsupportedRequestError.unsupported_search(n_even)
    names = _even_names(n_even)
    return [
        table
        for table in tables
        if core.is_nilpotent(core.SuperAlgebra.from_table(names, (), table))
    ]


def _matmul(left: Square, right: Square) -> Square:
    size = len(left)
    return tuple(
        tuple(
            sum((left[r][k] * right[k][c] for k in range(size)), Fraction(0))
            for c in range(size)
        )
        for r in range(size)
    )


def _commutator(left: Square, right: Square) -> Square:
    forward, backward = _matmul(left, right), _matmul(right, left)
    return tuple(
        tuple(a - b for a, b in zip(row_f, row_b, strict=True))
        for row_f, row_b in zip(forward, backward, strict=True)
    )


def _combination(
    coefficients: cabc.Mapping[int, Fraction], mats: cabc.Sequence[Square]
) -> Square:
    size = len(mats[0])
    return tuple(
        tuple(
            sum(
                (value * mats[k][r][c] for k, value in coefficients.items()),
                Fraction(0),
            )
            for c in range(size)
        )
        for r in range(size)
    )


def _is_representation(table: EvenTable, mats: cabc.Sequence[Square]) -> bool:
    return all(
        _commutator(mats[i], mats[j]) == _combination(table.get((i, j), {}), mats)
        for i, j in itertools.combinations(range(len(mats)), 2)
    )


def strictly_upper_actions(
    n_even: int, grid: cabc.Sequence[Fraction]
) -> cabc.Iterator[tuple[Square, ...]]:
    """Yield every tuple of strictly upper triangular ``n x n`` grid matrices."""
    m = n_even
    positions = [(row, col) for col in range(m) for row in range(col)]
    for values in itertools.product(grid, repeat=n_even * len(positions)):
        mats: list[Square] = []
        for k in range(n_even):
            entries = dict(zip(positions, values[k * len(positions) :], strict=False))
            mats.append(
                tuple(
                    tuple(entries.get((r, c), Fraction(0)) for c in range(m))
                    for r in range(m)
                )
            )
        yield tuple(mats)


def _even_bracket(table: EvenTable, a: int, i: int) -> dict[int, Fraction]:
    if a < i:
        return table.get((a, i), {})
    if a > i:
        return {k: -value for k, value in table.get((i, a), {}).items()}
    return {}


def equivariant_pairings(
    table: EvenTable, mats: cabc.Sequence[Square]
) -> tuple[Vector, ...]:
    """
    Return a basis of pairings with ``B([a, x], y) + B(x, [a, y]) = 0``.

    Pairings are flattened row by row: entry ``i * m + j`` is ``B(X_i, e_j)``.
    """
    n = len(mats)
    m = len(mats[0])
    rows: list[Vector] = []
    for a, i, j in itertools.product(range(n), range(n), range(m)):
        row = [Fraction(0)] * (n * m)
        for k, value in _even_bracket(table, a, i).items():
            row[k * m + j] += value
        for target in range(m):
            row[i * m + target] += mats[a][target][j]
        rows.append(linalg.vector(row))
    return linalg.kernel(rows, n * m)


def _sympy_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def generically_nondegenerate(kernel: cabc.Sequence[Vector], n: int) -> bool:
    """Return whether ``det(sum t_k K_k)`` is not identically zero."""
    if not kernel:
        return False
    symbols = sympy.symbols(f"t0:{len(kernel)}")
    generic = sympy.Matrix(
        n,
        n,
        lambda r, c: sum(
            symbol * _sympy_rational(basis[r * n + c].base)
            for symbol, basis in zip(symbols, kernel, strict=True)
        ),
    )
    return sympy.expand(generic.det(method="berkowitz")) != 0


def _preferred(grid: cabc.Sequence[Fraction]) -> list[Fraction]:
    return sorted(grid, key=lambda value: (abs(value), value < 0))


def choose_pairing(
    kernel: cabc.Sequence[Vector], n: int, grid: cabc.Sequence[Fraction]
) -> OddForm | None:
    """Return the first non-degenerate grid combination of ``kernel``."""
    for coefficients in itertools.product(_preferred(grid), repeat=len(kernel)):
        flat = [
            sum(
                (
                    c * basis[index].base
                    for c, basis in zip(coefficients, kernel, strict=True)
                ),
                Fraction(0),
            )
            for index in range(n * n)
        ]
        pairing = linalg.matrix(flat[row * n : (row + 1) * n] for row in range(n))
        if linalg.rank(pairing, n) == n:
            return OddForm(n, n, pairing)
    return None


def _algebra(
    table: EvenTable,
    mats: cabc.Sequence[Square],
    odd_values: cabc.Sequence[Fraction],
) -> SuperAlgebra:
    n = len(mats)
    full: dict[tuple[int, int], dict[int, Fraction]] = dict(table)
    for k, action in enumerate(mats):
        for j in range(n):
            full[k, n + j] = {n + target: action[target][j] for target in range(n)}
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    for position, (i, j) in enumerate(pairs):
        chunk = odd_values[position * n : (position + 1) * n]
        full[n + i, n + j] = dict(enumerate(chunk))
    return core.SuperAlgebra.from_table(_even_names(n), _odd_names(n), full)


def _accepts(alg: SuperAlgebra, form: OddForm) -> bool:
    return (
        not core.jacobi_violations(alg)
        and forms.verify_odd_quadratic(alg, form).passed
        and flags.detect_filiform(alg)
    )


def _check_grid(grid: cabc.Sequence[Fraction]) -> tuple[Fraction, ...]:
    values = tuple(dict.fromkeys(Fraction(value) for value in grid))
    if not {Fraction(-1), Fraction(0), Fraction(1)} <= set(values):
        listed = ", ".join(str(value) for value in values)
        raise UnsupportedRequestError.grid_missing(listed)
    return values


def _odd_assignments(
    n: int, grid: cabc.Sequence[Fraction], limit: int
) -> cabc.Iterator[tuple[Fraction, ...]]:
    slots = n * n * (n + 1) // 2
    count = len(grid) ** slots
    if count > limit:
        raise UnsupportedRequestError.search_too_large(count, limit)
    return itertools.product(grid, repeat=slots)


def _pairing_survivors(
    n_even: int, grid: tuple[Fraction, ...], counts: SearchCounts
) -> cabc.Iterator[tuple[EvenTable, tuple[Square, ...], OddForm]]:
    for table in even_candidates(n_even, grid):
        counts.even_parts += 1
        for mats in strictly_upper_actions(n_even, grid):
            counts.actions += 1
            if not _is_representation(table, mats):
                continue
            counts.representations += 1
            chain = flags.action_chain_dims([linalg.matrix(op) for op in mats], n_even)
            if chain != flags.filiform_shape(n_even):
                continue
            counts.filiform += 1
            kernel = equivariant_pairings(table, mats)
            if not generically_nondegenerate(kernel, n_even):
                continue
            form = choose_pairing(kernel, n_even, grid)
            if form is None:
                logger.debug("no non-degenerate grid pairing for %s", mats)
                continue
            counts.pairings += 1
            yield table, mats, form


def small_search_nonexistence(
    n_even: int,
    grid: cabc.Sequence[Fraction] = DEFAULT_GRID,
    *,
    limit: int = MAX_SEARCH_ASSIGNMENTS,
) -> SearchReport:
    """
    Enumerate filiform odd-quadratic candidates with ``dim g0 = dim g1 = n_even``.

    Parameters
    ----------
    n_even : int
        Even dimension; 1, 2 or 3.
    grid : Sequence[Fraction]
        Finite coefficient set containing -1, 0 and 1.
    limit : int
        Largest number of odd-odd assignments examined per surviving action.

    Returns
    -------
    SearchReport
        Stage counts and every accepted assignment.

    Raises
    ------
    UnsupportedRequestError
        For unsupported shapes, a grid missing -1, 0 or 1, or an assignment
        count above ``limit``.
    """
    values = _check_grid(grid)
    counts = SearchCounts()
    hits: list[SearchHit] = []
    for table, mats, form in _pairing_survivors(n_even, values, counts):
        for odd_values in _odd_assignments(n_even, values, limit):
            counts.assignments += 1
            alg = _algebra(table, mats, odd_values)
            if _accepts(alg, form):
                hits.append(SearchHit(alg, form, fingerprint(alg)))
    report = SearchReport(n_even, values, counts, tuple(hits))
    logger.info(
        "search n_even=%d: %d actions, %d filiform, %d with pairings, "
        "%d hits in %d classes",
        n_even,
        counts.actions,
        counts.filiform,
        counts.pairings,
        len(hits),
        len(report.classes),
    )
    return report
