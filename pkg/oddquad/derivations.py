"""
Skew-supersymmetric superderivations and generalized double-extension data.

Sign conventions for a homogeneous map ``D`` of parity ``d``:

* Leibniz: ``D[x, y] = [Dx, y] + (-1)^(d|x|) [x, Dy]``
* skewness: ``B(Dx, y) + (-1)^(d|x|) B(x, Dy) = 0``
"""

from __future__ import annotations

import dataclasses
import itertools
import typing as typ

from oddquad import core, linalg
from oddquad.certificates import Certificate, Check
from oddquad.errors import DimensionError, GradingError
from oddquad.forms import require_odd_quadratic
from oddquad.linalg import Matrix, Subspace, Vector
from oddquad.scalar import ZERO, Scalar, ScalarLike

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra
    from oddquad.flags import Flag
    from oddquad.forms import OddForm


@dataclasses.dataclass(frozen=True, slots=True)
class GradedMap:
    """A homogeneous endomorphism; column ``j`` is the image of basis ``j``."""

    matrix: Matrix
    parity: int

    @property
    def dim(self) -> int:
        """Return the size of the space acted on."""
        return len(self.matrix)

    def apply(self, values: Vector) -> Vector:
        """Return the image of a vector."""
        return linalg.matvec(self.matrix, values)

    def image(self, index: int) -> Vector:
        """Return the image of basis vector ``index``."""
        return tuple(row[index] for row in self.matrix)

    def compose(self, other: GradedMap) -> GradedMap:
        """Return ``self ∘ other``."""
        return GradedMap(
            linalg.matmul(self.matrix, other.matrix), (self.parity + other.parity) % 2
        )

    def supercommutator(self, other: GradedMap) -> GradedMap:
        """Return ``self other - (-1)^(|self||other|) other self``."""
        first = self.compose(other).matrix
        second = other.compose(self).matrix
        sign = -1 if self.parity * other.parity == 0 else 1
        rows = tuple(
            tuple(a + sign * b for a, b in zip(row_a, row_b, strict=True))
            for row_a, row_b in zip(first, second, strict=True)
        )
        return GradedMap(rows, (self.parity + other.parity) % 2)


@dataclasses.dataclass(frozen=True, slots=True)
class OddDerivation:
    """
    An odd linear map stored as its two off-diagonal blocks.

    Attributes
    ----------
    even_to_odd : Matrix
        ``m_odd x n_even`` block: odd coordinates of the images of even vectors.
    odd_to_even : Matrix
        ``n_even x m_odd`` block: even coordinates of the images of odd vectors.
    """

    n_even: int
    m_odd: int
    even_to_odd: Matrix
    odd_to_even: Matrix

    def __post_init__(self) -> None:
        """Check block shapes."""
        blocks = ((self.even_to_odd, self.m_odd, self.n_even),
                  (self.odd_to_even, self.n_even, self.m_odd))
        for block, rows, cols in blocks:
            if len(block) != rows or any(len(row) != cols for row in block):
                raise DimensionError.mismatch("derivation block", rows, len(block))

    @classmethod
    def zero(cls, alg: SuperAlgebra) -> OddDerivation:
        """Return the zero map."""
        return cls.from_coordinates(alg, (ZERO,) * (2 * alg.n_even * alg.m_odd))

    @classmethod
    def from_images(
        cls,
        alg: SuperAlgebra,
        images: cabc.Mapping[str, cabc.Mapping[str, ScalarLike]],
    ) -> OddDerivation:
        """
        Build a map from named images such as ``{"X1": {"e3": -1}}``.

        Raises
        ------
        GradingError
            If an image component does not have the opposite parity.
        """
        full = [[ZERO] * alg.dim for _ in range(alg.dim)]
        for source, targets in images.items():
            column = alg.index(source)
            for target, value in targets.items():
                row = alg.index(target)
                if alg.parity(row) == alg.parity(column):
                    raise GradingError.bracket_parity("D", source, target)
                full[row][column] = Scalar.of(value)
        return cls.from_full(alg, tuple(tuple(row) for row in full))

    @classmethod
    def from_full(cls, alg: SuperAlgebra, full: Matrix) -> OddDerivation:
        """Cut the two odd blocks out of a full matrix."""
        n = alg.n_even
        return cls(
            n,
            alg.m_odd,
            tuple(tuple(row[:n]) for row in full[n:]),
            tuple(tuple(row[n:]) for row in full[:n]),
        )

    @classmethod
    def from_coordinates(cls, alg: SuperAlgebra, values: Vector) -> OddDerivation:
        """Build a map from its flattened block entries (see :meth:`coordinates`)."""
        n, m = alg.n_even, alg.m_odd
        upper = values[: n * m]
        lower = values[n * m :]
        return cls(
            n,
            m,
            tuple(tuple(upper[r * n : (r + 1) * n]) for r in range(m)),
            tuple(tuple(lower[r * m : (r + 1) * m]) for r in range(n)),
        )

    def coordinates(self) -> Vector:
        """Return the even-to-odd block row by row, then the odd-to-even block."""
        return tuple(itertools.chain(*self.even_to_odd, *self.odd_to_even))

    def full(self) -> Matrix:
        """Return the full square matrix."""
        n, m = self.n_even, self.m_odd
        top = tuple((ZERO,) * n + tuple(row) for row in self.odd_to_even)
        bottom = tuple(tuple(row) + (ZERO,) * m for row in self.even_to_odd)
        return top + bottom

    def as_graded(self) -> GradedMap:
        """Return the map as an odd :class:`GradedMap`."""
        return GradedMap(self.full(), 1)

    def apply(self, values: Vector) -> Vector:
        """Return the image of a vector."""
        return linalg.matvec(self.full(), values)

    def describe(self, alg: SuperAlgebra) -> dict[str, dict[str, Scalar]]:
        """Return the sparse named images."""
        graded = self.as_graded()
        result: dict[str, dict[str, Scalar]] = {}
        for index, name in enumerate(alg.names):
            image = {
                alg.names[row]: value
                for row, value in enumerate(graded.image(index))
                if not value.is_zero
            }
            if image:
                result[name] = image
        return result


def _sign(parity: int, index_parity: int) -> int:
    return -1 if parity * index_parity else 1


def leibniz_residual(alg: SuperAlgebra, op: GradedMap, i: int, j: int) -> Vector:
    """Return ``D[x_i,x_j] - [Dx_i, x_j] - (-1)^(d|i|)[x_i, Dx_j]``."""
    unit_i, unit_j = alg.unit(i), alg.unit(j)
    lhs = op.apply(core.to_dense(alg.basis_bracket(i, j), alg.dim))
    first = alg.bracket(op.image(i), unit_j)
    sign = _sign(op.parity, alg.parity(i))
    second = linalg.scale(alg.bracket(unit_i, op.image(j)), sign)
    return linalg.sub_vectors(linalg.sub_vectors(lhs, first), second)


def skew_residual(
    form: OddForm, alg: SuperAlgebra, op: GradedMap, pair: tuple[int, int]
) -> Scalar:
    """Return ``B(Dx_i, x_j) + (-1)^(d|i|) B(x_i, Dx_j)``."""
    i, j = pair
    first = form.value(op.image(i), alg.unit(j))
    second = form.value(alg.unit(i), op.image(j))
    return first + _sign(op.parity, alg.parity(i)) * second


def derivation_violations(
    alg: SuperAlgebra, form: OddForm | None, op: GradedMap
) -> list[str]:
    """Return failures of the Leibniz rule and, when a form is given, skewness."""
    names = alg.names
    violations: list[str] = []
    for i, j in itertools.combinations_with_replacement(range(alg.dim), 2):
        residual = leibniz_residual(alg, op, i, j)
        if not linalg.is_zero_vector(residual):
            violations.append(f"Leibniz fails on ({names[i]}, {names[j]})")
    if form is not None:
        for i, j in itertools.product(range(alg.dim), repeat=2):
            if not skew_residual(form, alg, op, (i, j)).is_zero:
                violations.append(f"skewness fails on ({names[i]}, {names[j]})")
    return violations


def _equations(alg: SuperAlgebra, form: OddForm, op: GradedMap) -> Vector:
    values: list[Scalar] = []
    for i, j in itertools.combinations_with_replacement(range(alg.dim), 2):
        values.extend(leibniz_residual(alg, op, i, j))
        if alg.parity(i) == alg.parity(j):
            values.append(skew_residual(form, alg, op, (i, j)))
    return tuple(values)


def solve_odd_skew_derivations(
    alg: SuperAlgebra, form: OddForm
) -> tuple[OddDerivation, ...]:
    """
    Return an echelon basis of the odd B-skew superderivations.

    Every condition is linear in the ``2 n m`` block entries, so the residuals
    of the elementary maps form the columns of the linear system.
    """
    require_odd_quadratic(alg, form, "derivation solver")
    unknowns = 2 * alg.n_even * alg.m_odd
    columns = []
    for position in range(unknowns):
        unit = linalg.unit_vector(unknowns, position)
        elementary = OddDerivation.from_coordinates(alg, unit)
        columns.append(_equations(alg, form, elementary.as_graded()))
    system = linalg.transpose(tuple(columns))
    solutions = Subspace.span(linalg.kernel(system, unknowns), unknowns)
    return tuple(OddDerivation.from_coordinates(alg, row) for row in solutions.rows)


def derivation_space(alg: SuperAlgebra, form: OddForm) -> Subspace:
    """Return the solution space in block coordinates."""
    basis = solve_odd_skew_derivations(alg, form)
    return Subspace.span((op.coordinates() for op in basis), 2 * alg.n_even * alg.m_odd)


@dataclasses.dataclass(frozen=True, slots=True)
class ExtensionData:
    """Data ``(D, X0, lambda0)`` of a generalized odd double extension."""

    derivation: OddDerivation
    x0: Vector
    lambda0: Scalar = ZERO

    def __post_init__(self) -> None:
        """Check that ``X0`` is even."""
        n = self.derivation.n_even
        if len(self.x0) != n + self.derivation.m_odd:
            raise DimensionError.mismatch("X0", n + self.derivation.m_odd, len(self.x0))
        if not linalg.is_zero_vector(self.x0[n:]):
            raise GradingError.inhomogeneous("X0")
        object.__setattr__(self, "lambda0", Scalar.of(self.lambda0))

    @classmethod
    def build(
        cls,
        alg: SuperAlgebra,
        images: cabc.Mapping[str, cabc.Mapping[str, ScalarLike]],
        x0: cabc.Mapping[str, ScalarLike] | None = None,
    ) -> ExtensionData:
        """Build data from named images and a named ``X0``; ``lambda0`` is zero."""
        return cls(OddDerivation.from_images(alg, images), alg.vector(x0 or {}))


def _square_violations(alg: SuperAlgebra, data: ExtensionData) -> list[str]:
    full = data.derivation.full()
    square = linalg.matmul(full, full)
    violations: list[str] = []
    for index, name in enumerate(alg.names):
        image = tuple(row[index] for row in square)
        expected = linalg.scale(alg.bracket(data.x0, alg.unit(index)), Scalar.of(1) / 2)
        if image != expected:
            violations.append(
                f"D^2({name}) = {alg.describe(image)} but "
                f"1/2 [X0, {name}] = {alg.describe(expected)}"
            )
    return violations


def _membership_check(alg: SuperAlgebra, data: ExtensionData, flag: Flag) -> Check:
    op = data.derivation.as_graded()
    images = [op.image(index) for index in range(alg.n_even)]
    lower = flag.level(flag.length - 1)
    spanned = lower.plus(Subspace.span(images, alg.dim))
    passed = spanned == alg.odd_subspace()
    witness = () if passed else (
        f"V(m-1) + D(g0) has dimension {spanned.dim}, expected {alg.m_odd}",
    )
    return Check("e_m in D(g0)", passed=passed, witness=witness)


def validate_extension_data(
    alg: SuperAlgebra, form: OddForm, data: ExtensionData, flag: Flag
) -> Certificate:
    """
    Check ``(D, X0, lambda0)`` against the generalized extension conditions.

    Membership of ``e_m`` in ``D(g0)`` modulo ``V(m-1)`` is evaluated as
    ``V(m-1) + D(g0) = g1``.
    """
    op = data.derivation.as_graded()
    image = op.apply(data.x0)
    return Certificate(
        "extension data",
        (
            Check.from_violations(
                "odd skew derivation", derivation_violations(alg, form, op)
            ),
            Check(
                "D(X0) = 0",
                passed=linalg.is_zero_vector(image),
                witness=() if linalg.is_zero_vector(image) else (alg.describe(image),),
            ),
            Check.from_violations("D^2 = 1/2 ad(X0)", _square_violations(alg, data)),
            _membership_check(alg, data, flag),
        ),
    )
