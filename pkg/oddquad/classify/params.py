"""
Structure constants and odd forms with polynomial coefficients.

Coefficients are sparse sympy ring elements over ``QQ`` with the lexicographic
order of :attr:`ParamRing.names`; the order doubles as the elimination
preference of :mod:`oddquad.classify.elimination`. Brackets are stored for
``i <= j`` exactly as in :class:`~oddquad.core.SuperAlgebra`, so the generic
sparse helpers of :mod:`oddquad.core` evaluate Jacobi sums over polynomials.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
import typing as typ
from fractions import Fraction

import sympy

from oddquad import core, linalg
from oddquad.errors import ClassificationError, GradingError
from oddquad.forms import OddForm

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from sympy.polys.rings import PolyElement, PolyRing

    from oddquad.core import SuperAlgebra

type Poly = PolyElement
type CoefficientText = str | int | Fraction

_PLACEHOLDER: typ.Final = "unused"


def _rational(value: Fraction | int) -> sympy.Rational:
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def to_fraction(expr: sympy.Expr) -> Fraction:
    """Return a rational sympy number as a Fraction."""
    rational = sympy.Rational(expr)
    return Fraction(int(rational.p), int(rational.q))


@dataclasses.dataclass(frozen=True)
class ParamRing:
    """The polynomial ring ``QQ[names]`` in lexicographic order."""

    names: tuple[str, ...]

    @functools.cached_property
    def ring(self) -> PolyRing:
        """Return the underlying sparse sympy ring."""
        generators = list(self.names) or [_PLACEHOLDER]
        return sympy.ring(generators, sympy.QQ, sympy.lex)[0]

    @functools.cached_property
    def _symbols(self) -> dict[str, sympy.Symbol]:
        return {str(symbol): symbol for symbol in self.ring.symbols}

    @property
    def zero(self) -> Poly:
        """Return the zero polynomial."""
        return self.ring.zero

    @property
    def one(self) -> Poly:
        """Return the unit polynomial."""
        return self.ring.one

    def gen(self, name: str) -> Poly:
        """Return the generator called ``name``."""
        try:
            return self.ring.gens[self.names.index(name)]
        except ValueError as err:
            raise GradingError.unknown_name(name) from err

    def constant(self, value: Fraction | int) -> Poly:
        """Return a constant polynomial."""
        return self.ring(_rational(value))

    def parse(self, text: CoefficientText) -> Poly:
        """Parse ``"-d24*a"``-style text, or a number, into the ring."""
        if not isinstance(text, str):
            return self.constant(text)
        expr = sympy.sympify(text.replace("−", "-"), locals=self._symbols)
        return self.ring.from_expr(expr)

    def from_expr(self, expr: sympy.Expr) -> Poly:
        """Convert a sympy expression over the ring symbols."""
        return self.ring.from_expr(sympy.expand(expr))

    def variables(self, poly: Poly) -> tuple[str, ...]:
        """Return the names occurring in ``poly``, in ring order."""
        degrees = poly.degrees()
        return tuple(
            name
            for name, degree in zip(self.names, degrees, strict=False)
            if degree > 0
        )

    def substitute(self, poly: Poly, values: cabc.Mapping[str, Poly]) -> Poly:
        """Substitute polynomials for generators simultaneously."""
        present = set(self.variables(poly))
        replacements = [
            (self.gen(name), value) for name, value in values.items() if name in present
        ]
        return poly.compose(replacements) if replacements else poly

    def value(self, poly: Poly) -> Fraction:
        """Return the constant value of a ground polynomial."""
        if not poly.is_ground:
            raise ClassificationError.not_constant(self.render(poly))
        return to_fraction(poly.as_expr())

    def evaluate(self, text: str, values: cabc.Mapping[str, Fraction]) -> Fraction:
        """Evaluate a rational expression such as ``"a44_4/a44_2"`` at ``values``."""
        expr = sympy.sympify(text.replace("−", "-"), locals=self._symbols)
        numeric = expr.xreplace({
            symbol: _rational(values[name])
            for name, symbol in self._symbols.items()
            if name in values
        })
        if not numeric.is_Rational:
            raise ClassificationError.not_constant(str(numeric))
        return to_fraction(numeric)

    def render(self, poly: Poly) -> str:
        """Render a polynomial as sympy prints it."""
        return str(poly.as_expr())


def _fold(
    ring: ParamRing,
    even: cabc.Sequence[str],
    odd: cabc.Sequence[str],
    brackets: cabc.Mapping[tuple[str, str], cabc.Mapping[str, CoefficientText]],
) -> dict[tuple[int, int], dict[int, Poly]]:
    names = (*even, *odd)
    n_even = len(even)

    def index(name: str) -> int:
        try:
            return names.index(name)
        except ValueError as err:
            raise GradingError.unknown_name(name) from err

    table: dict[tuple[int, int], dict[int, Poly]] = {}
    for (left, right), values in brackets.items():
        i, j = index(left), index(right)
        expected = (int(i >= n_even) + int(j >= n_even)) % 2
        sparse: dict[int, Poly] = {}
        for target, text in values.items():
            k = index(target)
            if int(k >= n_even) != expected:
                raise GradingError.bracket_parity(left, right, target)
            coefficient = ring.parse(text)
            if not coefficient.is_zero:
                sparse[k] = coefficient
        if i > j:
            if not (i >= n_even and j >= n_even):
                sparse = {k: -value for k, value in sparse.items()}
            i, j = j, i
        if (i, j) in table:
            raise GradingError.conflicting_bracket(names[i], names[j])
        table[i, j] = sparse
    return table


@dataclasses.dataclass(frozen=True)
class ParamAlgebra:
    """
    A graded bracket whose structure constants are polynomials.

    Attributes
    ----------
    ring : ParamRing
        Coefficient ring.
    even, odd : tuple[str, ...]
        Basis names, even block first.
    table : Mapping[tuple[int, int], Mapping[int, Poly]]
        Brackets for ``i <= j``.
    """

    ring: ParamRing
    even: tuple[str, ...]
    odd: tuple[str, ...]
    table: cabc.Mapping[tuple[int, int], cabc.Mapping[int, Poly]]

    @classmethod
    def from_brackets(
        cls,
        ring: ParamRing,
        basis: tuple[cabc.Sequence[str], cabc.Sequence[str]],
        brackets: cabc.Mapping[tuple[str, str], cabc.Mapping[str, CoefficientText]],
    ) -> ParamAlgebra:
        """Build from even and odd names and brackets with textual coefficients."""
        even, odd = basis
        return cls(ring, tuple(even), tuple(odd), _fold(ring, even, odd, brackets))

    @property
    def names(self) -> tuple[str, ...]:
        """Return all basis names."""
        return (*self.even, *self.odd)

    @property
    def n_even(self) -> int:
        """Return the even dimension."""
        return len(self.even)

    @property
    def dim(self) -> int:
        """Return the total dimension."""
        return len(self.even) + len(self.odd)

    @functools.cached_property
    def parities(self) -> tuple[int, ...]:
        """Return the parity of every basis index."""
        return tuple(int(index >= self.n_even) for index in range(self.dim))

    def index(self, name: str) -> int:
        """Return the basis index of ``name``."""
        try:
            return self.names.index(name)
        except ValueError as err:
            raise GradingError.unknown_name(name) from err

    def basis_bracket(self, i: int, j: int) -> dict[int, Poly]:
        """Return ``[x_i, x_j]``."""
        return core.basis_bracket(self.table, self.parities, i, j)

    def substitute(self, values: cabc.Mapping[str, Poly]) -> ParamAlgebra:
        """Return the algebra with generators replaced by polynomials."""
        table: dict[tuple[int, int], dict[int, Poly]] = {}
        for pair, sparse in self.table.items():
            reduced = {
                k: self.ring.substitute(value, values) for k, value in sparse.items()
            }
            table[pair] = {
                k: value for k, value in reduced.items() if not value.is_zero
            }
        return ParamAlgebra(self.ring, self.even, self.odd, table)

    def specialize(self, values: cabc.Mapping[str, Fraction | int]) -> SuperAlgebra:
        """
        Return the numeric algebra at ``values``.

        Raises
        ------
        ClassificationError
            If a coefficient still depends on an unassigned name.
        """
        constants = {name: self.ring.constant(value) for name, value in values.items()}
        table = {
            pair: {
                k: self.ring.value(self.ring.substitute(value, constants))
                for k, value in sparse.items()
            }
            for pair, sparse in self.table.items()
        }
        return core.SuperAlgebra.from_table(self.even, self.odd, table)


@dataclasses.dataclass(frozen=True)
class ParamForm:
    """An odd form whose pairing entries are polynomials."""

    ring: ParamRing
    n_even: int
    m_odd: int
    pairing: tuple[tuple[Poly, ...], ...]

    @staticmethod
    def entry_name(even: str, odd: str) -> str:
        """Return the indeterminate name used for ``B(even, odd)``."""
        return f"B_{even}_{odd}"

    @classmethod
    def generic(cls, algebra: ParamAlgebra) -> ParamForm:
        """Return the form with one indeterminate ``B_<even>_<odd>`` per entry."""
        ring = algebra.ring
        pairing = tuple(
            tuple(ring.gen(cls.entry_name(even, odd)) for odd in algebra.odd)
            for even in algebra.even
        )
        return cls(ring, len(algebra.even), len(algebra.odd), pairing)

    @classmethod
    def zero(cls, algebra: ParamAlgebra) -> ParamForm:
        """Return the zero form."""
        row = (algebra.ring.zero,) * len(algebra.odd)
        n_even = len(algebra.even)
        return cls(algebra.ring, n_even, len(algebra.odd), (row,) * n_even)

    def basis_value(self, i: int, j: int) -> Poly:
        """Return ``B(x_i, x_j)``."""
        if i < self.n_even <= j:
            return self.pairing[i][j - self.n_even]
        if j < self.n_even <= i:
            return self.pairing[j][i - self.n_even]
        return self.ring.zero

    def sparse_value(
        self, left: cabc.Mapping[int, Poly], right: cabc.Mapping[int, Poly]
    ) -> Poly:
        """Return ``B(left, right)`` for sparse polynomial vectors."""
        total = self.ring.zero
        for i, a in left.items():
            for j, b in right.items():
                entry = self.basis_value(i, j)
                if not entry.is_zero:
                    total += a * b * entry
        return total

    def substitute(self, values: cabc.Mapping[str, Poly]) -> ParamForm:
        """Return the form with generators replaced by polynomials."""
        pairing = tuple(
            tuple(self.ring.substitute(entry, values) for entry in row)
            for row in self.pairing
        )
        return ParamForm(self.ring, self.n_even, self.m_odd, pairing)

    def determinant(self) -> Poly:
        """Return ``det`` of the pairing matrix."""
        matrix = sympy.Matrix(
            [[entry.as_expr() for entry in row] for row in self.pairing]
        )
        return self.ring.from_expr(matrix.det(method="berkowitz"))

    def specialize(self, values: cabc.Mapping[str, Fraction | int]) -> OddForm:
        """Return the numeric form at ``values``."""
        constants = {name: self.ring.constant(value) for name, value in values.items()}
        rows = [
            [self.ring.value(self.ring.substitute(entry, constants)) for entry in row]
            for row in self.pairing
        ]
        return OddForm(self.n_even, self.m_odd, linalg.matrix(rows))


def _indices(algebra: ParamAlgebra, triple: cabc.Sequence[str]) -> tuple[int, int, int]:
    i, j, k = (algebra.index(name) for name in triple)
    return i, j, k


def jacobi_triple(algebra: ParamAlgebra, triple: cabc.Sequence[str]) -> list[Poly]:
    """Return the non-zero coefficients of the Jacobi sum of one named triple."""
    indices = _indices(algebra, triple)
    residual = core.jacobi_residual(algebra.table, algebra.parities, indices)
    return [residual[k] for k in sorted(residual)]


def jacobi_constraints(algebra: ParamAlgebra) -> list[Poly]:
    """
    Return every non-zero Jacobi coefficient polynomial.

    Triples run over basis multisets ``i <= j <= k``; with no free
    indeterminates left the result is empty exactly when the super Jacobi
    identity holds.
    """
    constraints: list[Poly] = []
    for triple in itertools.combinations_with_replacement(range(algebra.dim), 3):
        residual = core.jacobi_residual(algebra.table, algebra.parities, triple)
        constraints.extend(residual[k] for k in sorted(residual))
    return constraints


def _invariance(
    algebra: ParamAlgebra, form: ParamForm, triple: tuple[int, int, int]
) -> Poly:
    i, j, k = triple
    one = algebra.ring.one
    left = form.sparse_value(algebra.basis_bracket(i, j), {k: one})
    right = form.sparse_value({i: one}, algebra.basis_bracket(j, k))
    return left - right


def invariance_triple(
    algebra: ParamAlgebra, form: ParamForm, triple: cabc.Sequence[str]
) -> list[Poly]:
    """Return ``B([x,y],z) - B(x,[y,z])`` for one named triple, if non-zero."""
    difference = _invariance(algebra, form, _indices(algebra, triple))
    return [] if difference.is_zero else [difference]


def invariance_constraints(algebra: ParamAlgebra, form: ParamForm) -> list[Poly]:
    """Return every non-zero ``B([x,y],z) - B(x,[y,z])`` over ordered triples."""
    constraints: list[Poly] = []
    for triple in itertools.product(range(algebra.dim), repeat=3):
        difference = _invariance(algebra, form, triple)
        if not difference.is_zero:
            constraints.append(difference)
    return constraints
