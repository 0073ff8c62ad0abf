"""Exact dense linear algebra over :class:`~oddquad.scalar.Scalar` entries."""

from __future__ import annotations

import dataclasses
import typing as typ

from oddquad.errors import BasisChangeError, DimensionError
from oddquad.scalar import ONE, ZERO, Scalar, ScalarLike

if typ.TYPE_CHECKING:
    import collections.abc as cabc

type Vector = tuple[Scalar, ...]
type Matrix = tuple[Vector, ...]


def vector(values: cabc.Iterable[ScalarLike]) -> Vector:
    """Coerce an iterable of numbers into a vector of scalars."""
    return tuple(Scalar.of(value) for value in values)


def matrix(rows: cabc.Iterable[cabc.Iterable[ScalarLike]]) -> Matrix:
    """Coerce nested iterables of numbers into a matrix of scalars."""
    return tuple(vector(row) for row in rows)


def zero_vector(dim: int) -> Vector:
    """Return the zero vector of length ``dim``."""
    return (ZERO,) * dim


def unit_vector(dim: int, index: int) -> Vector:
    """Return the ``index``-th standard basis vector."""
    return tuple(ONE if position == index else ZERO for position in range(dim))


def identity(dim: int) -> Matrix:
    """Return the identity matrix."""
    return tuple(unit_vector(dim, index) for index in range(dim))


def diagonal(values: cabc.Sequence[ScalarLike]) -> Matrix:
    """Return the diagonal matrix with the given entries."""
    dim = len(values)
    return tuple(
        tuple(Scalar.of(values[row]) if row == col else ZERO for col in range(dim))
        for row in range(dim)
    )


def add_vectors(left: Vector, right: Vector) -> Vector:
    """Return the sum of two vectors of equal length."""
    if len(left) != len(right):
        raise DimensionError.mismatch("vector sum", len(left), len(right))
    return tuple(a + b for a, b in zip(left, right, strict=True))


def sub_vectors(left: Vector, right: Vector) -> Vector:
    """Return ``left - right``."""
    return add_vectors(left, scale(right, -ONE))


def scale(values: Vector, factor: ScalarLike) -> Vector:
    """Return ``factor * values``."""
    coefficient = Scalar.of(factor)
    return tuple(coefficient * entry for entry in values)


def is_zero_vector(values: Vector) -> bool:
    """Return whether every entry vanishes."""
    return all(entry.is_zero for entry in values)


def transpose(rows: Matrix) -> Matrix:
    """Return the transpose; an empty matrix stays empty."""
    if not rows:
        return ()
    return tuple(zip(*rows, strict=True))


def matvec(rows: Matrix, values: Vector) -> Vector:
    """Return ``rows @ values``."""
    result: list[Scalar] = []
    for row in rows:
        if len(row) != len(values):
            raise DimensionError.mismatch(
                "matrix-vector product", len(row), len(values)
            )
        total = ZERO
        for entry, value in zip(row, values, strict=True):
            if not (entry.is_zero or value.is_zero):
                total += entry * value
        result.append(total)
    return tuple(result)


def matmul(left: Matrix, right: Matrix) -> Matrix:
    """Return ``left @ right``."""
    columns = transpose(right)
    return tuple(matvec(columns, row) for row in left)


def rref(rows: cabc.Sequence[Vector], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """
    Return the reduced row echelon form and its pivot columns.

    Parameters
    ----------
    rows : Sequence[Vector]
        Rows of the matrix, each of length ``ncols``.
    ncols : int
        Number of columns; needed when ``rows`` is empty.

    Returns
    -------
    tuple[Matrix, tuple[int, ...]]
        The non-zero rows of the reduced form and the pivot column of each.
    """
    work = [list(row) for row in rows]
    for row in work:
        if len(row) != ncols:
            raise DimensionError.mismatch("row", ncols, len(row))
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        found = next(
            (index for index in range(lead, len(work)) if not work[index][col].is_zero),
            None,
        )
        if found is None:
            continue
        work[lead], work[found] = work[found], work[lead]
        inverse_pivot = work[lead][col].inverse()
        work[lead] = [entry * inverse_pivot for entry in work[lead]]
        for index, other in enumerate(work):
            factor = other[col]
            if index == lead or factor.is_zero:
                continue
            work[index] = [
                entry - factor * pivot_entry
                for entry, pivot_entry in zip(other, work[lead], strict=True)
            ]
        pivots.append(col)
        lead += 1
        if lead == len(work):
            break
    return tuple(tuple(row) for row in work[:lead]), tuple(pivots)


def rank(rows: cabc.Sequence[Vector], ncols: int) -> int:
    """Return the rank of a matrix given by rows."""
    return len(rref(rows, ncols)[1])


def kernel(rows: cabc.Sequence[Vector], ncols: int) -> tuple[Vector, ...]:
    """
    Return a basis of ``{x : rows @ x = 0}``.

    Each basis vector has a one at its own free column and zeros at the other
    free columns.
    """
    reduced, pivots = rref(rows, ncols)
    free = [col for col in range(ncols) if col not in pivots]
    basis: list[Vector] = []
    for free_col in free:
        entries = [ZERO] * ncols
        entries[free_col] = ONE
        for row, pivot in zip(reduced, pivots, strict=True):
            entries[pivot] = -row[free_col]
        basis.append(tuple(entries))
    return tuple(basis)


def inverse(square: Matrix) -> Matrix:
    """Return the inverse of a square matrix; singular input raises."""
    dim = len(square)
    augmented = [
        tuple(row) + unit_vector(dim, index) for index, row in enumerate(square)
    ]
    for row in square:
        if len(row) != dim:
            raise DimensionError.mismatch("square matrix", dim, len(row))
    reduced, pivots = rref(augmented, 2 * dim)
    if pivots[:dim] != tuple(range(dim)) or len(reduced) < dim:
        raise BasisChangeError.singular()
    return tuple(row[dim:] for row in reduced)


@dataclasses.dataclass(frozen=True, slots=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` stored by its canonical echelon basis."""

    ambient_dim: int
    rows: Matrix

    @classmethod
    def span(cls, vectors: cabc.Iterable[Vector], ambient_dim: int) -> Subspace:
        """Return the span of the given vectors."""
        reduced, _ = rref(list(vectors), ambient_dim)
        return cls(ambient_dim, reduced)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        """Return the zero subspace."""
        return cls(ambient_dim, ())

    @classmethod
    def coordinates_range(
        cls, ambient_dim: int, indices: cabc.Iterable[int]
    ) -> Subspace:
        """Return the span of the unit vectors at ``indices``."""
        return cls.span(
            (unit_vector(ambient_dim, index) for index in indices), ambient_dim
        )

    @property
    def dim(self) -> int:
        """Return the dimension."""
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        """Return the pivot column of each basis row."""
        return tuple(
            next(col for col, entry in enumerate(row) if not entry.is_zero)
            for row in self.rows
        )

    def contains(self, values: Vector) -> bool:
        """Return whether ``values`` lies in the subspace."""
        return rank((*self.rows, values), self.ambient_dim) == self.dim

    def plus(self, other: Subspace) -> Subspace:
        """Return the sum of two subspaces."""
        return Subspace.span((*self.rows, *other.rows), self.ambient_dim)

    def is_subspace_of(self, other: Subspace) -> bool:
        """Return whether every basis row lies in ``other``."""
        return other.plus(self).dim == other.dim

    def coordinates(self, values: Vector) -> Vector:
        """Return the coordinates of a member in the echelon basis."""
        return tuple(values[pivot] for pivot in self.pivots)

    def intersection(self, other: Subspace) -> Subspace:
        """Return the intersection of two subspaces."""
        if not (self.rows and other.rows):
            return Subspace.zero(self.ambient_dim)
        stacked = transpose((*self.rows, *(scale(row, -ONE) for row in other.rows)))
        relations = kernel(stacked, self.dim + other.dim)
        members = (
            matvec(transpose(self.rows), relation[: self.dim])
            for relation in relations
        )
        return Subspace.span(members, self.ambient_dim)
