"""
Finite-dimensional Lie superalgebras given by structure constants.

Basis order is always the even block followed by the odd block. Only pairs
``(i, j)`` with ``i <= j`` are stored; the remaining brackets follow from
graded skew-symmetry ``[x_j, x_i] = -(-1)^(|i||j|) [x_i, x_j]``.

The sparse helpers at the top of the module only need coefficients that
support ``+``, ``*``, unary ``-`` and an ``is_zero`` property, so the
parametric algebras of :mod:`oddquad.classify.params` reuse them with
polynomial coefficients.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import typing as typ

from oddquad import linalg
from oddquad.errors import BasisChangeError, DimensionError, GradingError
from oddquad.linalg import Matrix, Subspace, Vector
from oddquad.scalar import ZERO, Scalar, ScalarLike

if typ.TYPE_CHECKING:
    import collections.abc as cabc


class Coefficient(typ.Protocol):
    """Arithmetic needed from a structure-constant coefficient."""

    def __add__(self, other: typ.Self, /) -> typ.Self: ...

    def __mul__(self, other: typ.Self, /) -> typ.Self: ...

    def __neg__(self) -> typ.Self: ...

    @property
    def is_zero(self) -> bool: ...


type Sparse[C] = dict[int, C]
type Table[C] = cabc.Mapping[tuple[int, int], cabc.Mapping[int, C]]


def accumulate[C: Coefficient](
    target: Sparse[C], source: cabc.Mapping[int, C], factor: C | None = None
) -> None:
    """Add ``factor * source`` into ``target`` in place, dropping zeros."""
    for index, value in source.items():
        term = value if factor is None else factor * value
        current = target.get(index)
        total = term if current is None else current + term
        if total.is_zero:
            target.pop(index, None)
        else:
            target[index] = total


def basis_bracket[C: Coefficient](
    table: Table[C], parities: cabc.Sequence[int], i: int, j: int
) -> Sparse[C]:
    """Return ``[x_i, x_j]`` from a table that stores only ``i <= j``."""
    if i <= j:
        return dict(table.get((i, j), {}))
    stored = table.get((j, i), {})
    if parities[i] and parities[j]:
        return dict(stored)
    return {index: -value for index, value in stored.items()}


def sparse_bracket[C: Coefficient](
    table: Table[C],
    parities: cabc.Sequence[int],
    left: cabc.Mapping[int, C],
    right: cabc.Mapping[int, C],
) -> Sparse[C]:
    """Return the bracket of two sparse vectors by bilinearity."""
    result: Sparse[C] = {}
    for i, a in left.items():
        for j, b in right.items():
            accumulate(result, basis_bracket(table, parities, i, j), a * b)
    return result


def jacobi_residual[C: Coefficient](
    table: Table[C], parities: cabc.Sequence[int], triple: tuple[int, int, int]
) -> Sparse[C]:
    """
    Return the graded cyclic Jacobi sum for three basis vectors.

    The sum is ``(-1)^(|i||k|) [x_i,[x_j,x_k]] + (-1)^(|i||j|) [x_j,[x_k,x_i]]
    + (-1)^(|j||k|) [x_k,[x_i,x_j]]`` and vanishes on a Lie superalgebra.
    """
    i, j, k = triple
    result: Sparse[C] = {}
    terms = (
        (i, j, k, parities[i] * parities[k]),
        (j, k, i, parities[i] * parities[j]),
        (k, i, j, parities[j] * parities[k]),
    )
    for outer, first, second, sign in terms:
        inner = basis_bracket(table, parities, first, second)
        outer_vec = basis_bracket_row(table, parities, outer, inner)
        if sign:
            outer_vec = {index: -value for index, value in outer_vec.items()}
        accumulate(result, outer_vec)
    return result


def basis_bracket_row[C: Coefficient](
    table: Table[C],
    parities: cabc.Sequence[int],
    outer: int,
    inner: cabc.Mapping[int, C],
) -> Sparse[C]:
    """Return ``[x_outer, inner]`` for a sparse vector ``inner``."""
    result: Sparse[C] = {}
    for index, value in inner.items():
        accumulate(result, basis_bracket(table, parities, outer, index), value)
    return result


def to_sparse(values: Vector) -> Sparse[Scalar]:
    """Return the non-zero entries of a dense vector."""
    return {index: entry for index, entry in enumerate(values) if not entry.is_zero}


def to_dense(values: cabc.Mapping[int, Scalar], dim: int) -> Vector:
    """Return the dense vector of a sparse one."""
    return tuple(values.get(index, ZERO) for index in range(dim))


type Entries = tuple[tuple[tuple[int, int], tuple[tuple[int, Scalar], ...]], ...]


@dataclasses.dataclass(frozen=True)
class SuperAlgebra:
    """
    A Lie superalgebra over Q or a quadratic extension.

    Attributes
    ----------
    even, odd : tuple[str, ...]
        Basis names of the even and odd blocks.
    entries : Entries
        Canonical sparse structure constants: sorted pairs ``(i, j)`` with
        ``i <= j`` and their non-zero coefficients by output index.
    """

    even: tuple[str, ...]
    odd: tuple[str, ...]
    entries: Entries = ()

    def __post_init__(self) -> None:
        """Validate names, index ranges and the grading of every entry."""
        names = self.names
        seen: set[str] = set()
        for name in names:
            if name in seen:
                raise GradingError.duplicate_name(name)
            seen.add(name)
        for (i, j), values in self.entries:
            if not 0 <= i <= j < self.dim:
                raise DimensionError.mismatch("bracket index", self.dim, max(i, j))
            expected = (self.parity(i) + self.parity(j)) % 2
            for index, _ in values:
                if self.parity(index) != expected:
                    raise GradingError.bracket_parity(
                        names[i], names[j], names[index]
                    )

    @classmethod
    def from_table(
        cls,
        even: cabc.Sequence[str],
        odd: cabc.Sequence[str],
        table: cabc.Mapping[tuple[int, int], cabc.Mapping[int, ScalarLike]],
    ) -> SuperAlgebra:
        """
        Build an algebra from index-keyed brackets.

        Pairs with ``i > j`` are folded onto ``(j, i)`` by graded
        skew-symmetry; giving both orders with different values raises
        :class:`GradingError`.
        """
        n_even = len(even)
        names = (*even, *odd)
        canonical: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (i, j), values in table.items():
            sparse = {
                index: Scalar.of(value)
                for index, value in values.items()
                if not Scalar.of(value).is_zero
            }
            if i > j:
                if not (i >= n_even and j >= n_even):
                    sparse = {index: -value for index, value in sparse.items()}
                i, j = j, i
            if (i, j) in canonical and canonical[i, j] != sparse:
                raise GradingError.conflicting_bracket(names[i], names[j])
            canonical[i, j] = sparse
        return cls(tuple(even), tuple(odd), _freeze(canonical))

    @classmethod
    def from_brackets(
        cls,
        even: cabc.Sequence[str],
        odd: cabc.Sequence[str],
        brackets: cabc.Mapping[tuple[str, str], cabc.Mapping[str, ScalarLike]],
    ) -> SuperAlgebra:
        """Build an algebra from name-keyed brackets such as ``("X1", "e3")``."""
        lookup = {name: index for index, name in enumerate((*even, *odd))}

        def resolve(name: str) -> int:
            try:
                return lookup[name]
            except KeyError as err:
                raise GradingError.unknown_name(name) from err

        table = {
            (resolve(left), resolve(right)): {
                resolve(target): value for target, value in values.items()
            }
            for (left, right), values in brackets.items()
        }
        return cls.from_table(even, odd, table)

    @property
    def names(self) -> tuple[str, ...]:
        """Return all basis names in basis order."""
        return (*self.even, *self.odd)

    @property
    def n_even(self) -> int:
        """Return the even dimension."""
        return len(self.even)

    @property
    def m_odd(self) -> int:
        """Return the odd dimension."""
        return len(self.odd)

    @property
    def dim(self) -> int:
        """Return the total dimension."""
        return self.n_even + self.m_odd

    def parity(self, index: int) -> int:
        """Return ``0`` for even basis indices and ``1`` for odd ones."""
        return 0 if index < self.n_even else 1

    @functools.cached_property
    def parities(self) -> tuple[int, ...]:
        """Return the parity of every basis index."""
        return tuple(self.parity(index) for index in range(self.dim))

    @functools.cached_property
    def table(self) -> dict[tuple[int, int], dict[int, Scalar]]:
        """Return the stored constants as nested dictionaries."""
        return {pair: dict(values) for pair, values in self.entries}

    def index(self, name: str) -> int:
        """Return the basis index of ``name``."""
        try:
            return self.names.index(name)
        except ValueError as err:
            raise GradingError.unknown_name(name) from err

    def basis_bracket(self, i: int, j: int) -> Sparse[Scalar]:
        """Return ``[x_i, x_j]`` as a sparse vector."""
        return basis_bracket(self.table, self.parities, i, j)

    def bracket(self, left: Vector, right: Vector) -> Vector:
        """Return the bracket of two dense vectors."""
        if len(left) != self.dim or len(right) != self.dim:
            raise DimensionError.mismatch("bracket operand", self.dim, len(left))
        sparse = sparse_bracket(
            self.table, self.parities, to_sparse(left), to_sparse(right)
        )
        return to_dense(sparse, self.dim)

    def unit(self, name_or_index: str | int) -> Vector:
        """Return the basis vector with the given name or index."""
        index = (
            self.index(name_or_index)
            if isinstance(name_or_index, str)
            else name_or_index
        )
        return linalg.unit_vector(self.dim, index)

    def vector(self, coefficients: cabc.Mapping[str, ScalarLike]) -> Vector:
        """Return the dense vector with the given named coefficients."""
        sparse = {
            self.index(name): Scalar.of(value) for name, value in coefficients.items()
        }
        return to_dense(sparse, self.dim)

    def describe(self, values: Vector) -> str:
        """Render a vector as a combination of basis names."""
        terms = [
            name if entry == 1 else f"({entry})*{name}"
            for name, entry in zip(self.names, values, strict=True)
            if not entry.is_zero
        ]
        return " + ".join(terms) if terms else "0"

    def renamed(self, names: cabc.Sequence[str]) -> SuperAlgebra:
        """Return the same constants under new basis names."""
        if len(names) != self.dim:
            raise DimensionError.mismatch("basis names", self.dim, len(names))
        return SuperAlgebra(
            tuple(names[: self.n_even]), tuple(names[self.n_even :]), self.entries
        )

    def same_constants(self, other: SuperAlgebra) -> bool:
        """Return whether both algebras have identical constants, ignoring names."""
        return (
            self.n_even == other.n_even
            and self.m_odd == other.m_odd
            and self.entries == other.entries
        )

    def even_subspace(self) -> Subspace:
        """Return the even part as a subspace of the ambient space."""
        return Subspace.coordinates_range(self.dim, range(self.n_even))

    def odd_subspace(self) -> Subspace:
        """Return the odd part as a subspace of the ambient space."""
        return Subspace.coordinates_range(self.dim, range(self.n_even, self.dim))


def _freeze(table: cabc.Mapping[tuple[int, int], cabc.Mapping[int, Scalar]]) -> Entries:
    return tuple(
        (pair, tuple(sorted(values.items())))
        for pair, values in sorted(table.items())
        if values
    )


@dataclasses.dataclass(frozen=True, slots=True)
class JacobiViolation:
    """A basis triple whose graded Jacobi sum does not vanish."""

    triple: tuple[str, str, str]
    residual: Vector


def jacobi_violations(alg: SuperAlgebra) -> list[JacobiViolation]:
    """Return every basis multiset ``i <= j <= k`` violating super Jacobi."""
    violations: list[JacobiViolation] = []
    names = alg.names
    for triple in itertools.combinations_with_replacement(range(alg.dim), 3):
        residual = jacobi_residual(alg.table, alg.parities, triple)
        if residual:
            i, j, k = triple
            violations.append(
                JacobiViolation(
                    (names[i], names[j], names[k]), to_dense(residual, alg.dim)
                )
            )
    return violations


def _annihilator(alg: SuperAlgebra, indices: cabc.Sequence[int]) -> list[Vector]:
    """Return vectors supported on ``indices`` that bracket to zero with everything."""
    rows: list[Vector] = []
    for j in range(alg.dim):
        images = [to_dense(alg.basis_bracket(i, j), alg.dim) for i in indices]
        rows.extend(
            tuple(image[k] for image in images) for k in range(alg.dim)
        )
    solutions = linalg.kernel(rows, len(indices))
    result: list[Vector] = []
    for solution in solutions:
        entries = [ZERO] * alg.dim
        for position, index in enumerate(indices):
            entries[index] = solution[position]
        result.append(tuple(entries))
    return result


def center(alg: SuperAlgebra) -> Subspace:
    """
    Return the center, computed block by block so its basis is homogeneous.

    The even and odd parts of the result are ``graded_dims(alg, center(alg))``.
    """
    even = _annihilator(alg, range(alg.n_even))
    odd = _annihilator(alg, range(alg.n_even, alg.dim))
    return Subspace.span((*even, *odd), alg.dim)


def graded_dims(alg: SuperAlgebra, space: Subspace) -> tuple[int, int]:
    """Return the even and odd dimensions of a graded subspace."""
    even = space.intersection(alg.even_subspace()).dim
    odd = space.intersection(alg.odd_subspace()).dim
    return even, odd


def even_center(alg: SuperAlgebra) -> Subspace:
    """Return the center of the even Lie algebra, embedded in the ambient space."""
    rows: list[Vector] = []
    evens = range(alg.n_even)
    for j in evens:
        images = [to_dense(alg.basis_bracket(i, j), alg.dim) for i in evens]
        rows.extend(tuple(image[k] for image in images) for k in evens)
    solutions = linalg.kernel(rows, alg.n_even)
    padding = (ZERO,) * alg.m_odd
    return Subspace.span((solution + padding for solution in solutions), alg.dim)


def bracket_spaces(alg: SuperAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """Return the span of ``[a, b]`` over basis rows of two subspaces."""
    products = (alg.bracket(a, b) for a in left.rows for b in right.rows)
    return Subspace.span(products, alg.dim)


def lower_central_series(
    alg: SuperAlgebra, *, restrict_to_even: bool = False
) -> list[Subspace]:
    """
    Return ``C^0 ⊇ C^1 ⊇ ...`` with ``C^(k+1) = [C^k, g]`` until it stabilises.

    With ``restrict_to_even`` the series of the even Lie algebra is returned.
    The stabilised term appears once.
    """
    whole = alg.even_subspace() if restrict_to_even else Subspace.coordinates_range(
        alg.dim, range(alg.dim)
    )
    series = [whole]
    while True:
        following = bracket_spaces(alg, series[-1], whole)
        if following == series[-1]:
            return series
        series.append(following)


def derived_algebra(alg: SuperAlgebra, *, restrict_to_even: bool = False) -> Subspace:
    """Return ``[g, g]`` or ``[g0, g0]``."""
    whole = alg.even_subspace() if restrict_to_even else Subspace.coordinates_range(
        alg.dim, range(alg.dim)
    )
    return bracket_spaces(alg, whole, whole)


def is_nilpotent(alg: SuperAlgebra, *, restrict_to_even: bool = False) -> bool:
    """Return whether the lower central series reaches zero."""
    return lower_central_series(alg, restrict_to_even=restrict_to_even)[-1].dim == 0


def is_graded_ideal(alg: SuperAlgebra, space: Subspace) -> bool:
    """Return whether ``space`` is a graded ideal."""
    even, odd = graded_dims(alg, space)
    if even + odd != space.dim:
        return False
    whole = Subspace.coordinates_range(alg.dim, range(alg.dim))
    return bracket_spaces(alg, whole, space).is_subspace_of(space)


def adjoint_matrix(alg: SuperAlgebra, index: int) -> Matrix:
    """Return the matrix of ``ad(x_index)``; column ``j`` is ``[x_index, x_j]``."""
    columns = [to_dense(alg.basis_bracket(index, j), alg.dim) for j in range(alg.dim)]
    return linalg.transpose(tuple(columns))


def _check_parity_blocks(alg: SuperAlgebra, square: Matrix) -> None:
    if len(square) != alg.dim:
        raise DimensionError.mismatch("change-of-basis matrix", alg.dim, len(square))
    for row_index, row in enumerate(square):
        if len(row) != alg.dim:
            raise DimensionError.mismatch("change-of-basis row", alg.dim, len(row))
        for col_index, entry in enumerate(row):
            if not entry.is_zero and alg.parity(row_index) != alg.parity(col_index):
                raise BasisChangeError.mixes_parity(row_index, col_index)


def change_basis(
    alg: SuperAlgebra,
    transform: Matrix,
    names: cabc.Sequence[str] | None = None,
) -> SuperAlgebra:
    """
    Transport the structure constants along an even linear isomorphism.

    ``transform`` maps old coordinates to new coordinates, so the new
    constants are ``c'(a, b) = P [P^-1 e_a, P^-1 e_b]``. Composition is
    functorial: ``change_basis(change_basis(g, P), Q) == change_basis(g, Q P)``.

    Raises
    ------
    BasisChangeError
        If ``transform`` mixes parities or is singular.
    """
    _check_parity_blocks(alg, transform)
    inverse = linalg.inverse(transform)
    columns = linalg.transpose(inverse)
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for a in range(alg.dim):
        for b in range(a, alg.dim):
            image = linalg.matvec(transform, alg.bracket(columns[a], columns[b]))
            table[a, b] = to_sparse(image)
    chosen = alg.names if names is None else tuple(names)
    return SuperAlgebra.from_table(chosen[: alg.n_even], chosen[alg.n_even :], table)


def basis_matrix(new_basis: cabc.Sequence[Vector]) -> Matrix:
    """Return the matrix whose columns are the given vectors."""
    return linalg.transpose(tuple(new_basis))


def rebase(
    alg: SuperAlgebra,
    new_basis: cabc.Sequence[Vector],
    names: cabc.Sequence[str] | None = None,
) -> tuple[SuperAlgebra, Matrix]:
    """
    Rewrite the algebra in a new basis given in old coordinates.

    This is the form used in normalisation arguments such as
    ``X2' = X2 + q X3``. Returns the new algebra and the coordinate
    transform ``P`` accepted by :func:`change_basis`.
    """
    transform = linalg.inverse(basis_matrix(new_basis))
    return change_basis(alg, transform, names), transform


def _unique_names(taken: set[str], names: cabc.Sequence[str]) -> list[str]:
    result: list[str] = []
    for name in names:
        candidate = name
        while candidate in taken:
            candidate += "'"
        taken.add(candidate)
        result.append(candidate)
    return result


def direct_sum_algebras(
    left: SuperAlgebra, right: SuperAlgebra
) -> tuple[SuperAlgebra, tuple[int, ...], tuple[int, ...]]:
    """
    Return the direct sum and where each summand's basis landed.

    The basis is ``left even, right even, left odd, right odd``; clashing
    names of ``right`` are primed until unique.
    """
    left_map = (
        *range(left.n_even),
        *range(left.n_even + right.n_even, left.n_even + right.n_even + left.m_odd),
    )
    offset = left.dim + right.n_even
    right_map = (
        *range(left.n_even, left.n_even + right.n_even),
        *range(offset, offset + right.m_odd),
    )
    taken = set(left.names)
    right_even = _unique_names(taken, right.even)
    right_odd = _unique_names(taken, right.odd)
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for mapping, summand in ((left_map, left), (right_map, right)):
        for (i, j), values in summand.table.items():
            table[mapping[i], mapping[j]] = {
                mapping[index]: value for index, value in values.items()
            }
    algebra = SuperAlgebra.from_table(
        (*left.even, *right_even), (*left.odd, *right_odd), table
    )
    return algebra, left_map, right_map
