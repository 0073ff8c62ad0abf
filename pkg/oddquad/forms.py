"""
Odd supersymmetric bilinear forms and the odd-quadratic condition.

An odd form pairs the even block with the odd block and vanishes on pairs of
equal parity. It is stored as the ``n_even x m_odd`` matrix
``pairing[i][j] = B(even_i, odd_j)``; supersymmetry gives
``B(odd_j, even_i) = pairing[i][j]``.
"""

from __future__ import annotations

import dataclasses
import itertools
import typing as typ

from oddquad import core, linalg
from oddquad.certificates import Certificate, Check
from oddquad.errors import DimensionError, FormError, GradingError
from oddquad.linalg import Matrix, Subspace, Vector
from oddquad.scalar import ZERO, Scalar, ScalarLike

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra


@dataclasses.dataclass(frozen=True, slots=True)
class OddForm:
    """An odd supersymmetric bilinear form given by its pairing matrix."""

    n_even: int
    m_odd: int
    pairing: Matrix

    def __post_init__(self) -> None:
        """Check the pairing matrix shape."""
        if len(self.pairing) != self.n_even or any(
            len(row) != self.m_odd for row in self.pairing
        ):
            raise FormError.shape(self.n_even, self.m_odd)

    @classmethod
    def from_entries(
        cls,
        alg: SuperAlgebra,
        entries: cabc.Mapping[tuple[str, str], ScalarLike],
    ) -> OddForm:
        """
        Build a form from named entries such as ``{("X1", "v2"): 1}``.

        Either order of the pair is accepted; equal parities raise
        :class:`GradingError`.
        """
        rows = [[ZERO] * alg.m_odd for _ in range(alg.n_even)]
        for (left, right), value in entries.items():
            i, j = alg.index(left), alg.index(right)
            if alg.parity(i) == alg.parity(j):
                raise GradingError.form_entry(left, right)
            even, odd = (i, j) if alg.parity(i) == 0 else (j, i)
            rows[even][odd - alg.n_even] = Scalar.of(value)
        return cls(alg.n_even, alg.m_odd, linalg.matrix(rows))

    @classmethod
    def zero(cls, alg: SuperAlgebra) -> OddForm:
        """Return the zero form on ``alg``."""
        rows = [[0] * alg.m_odd for _ in range(alg.n_even)]
        return cls(alg.n_even, alg.m_odd, linalg.matrix(rows))

    def basis_value(self, i: int, j: int) -> Scalar:
        """Return ``B(x_i, x_j)`` for basis indices of the ambient algebra."""
        if i < self.n_even <= j:
            return self.pairing[i][j - self.n_even]
        if j < self.n_even <= i:
            return self.pairing[j][i - self.n_even]
        return ZERO

    def sparse_value(
        self, left: cabc.Mapping[int, Scalar], right: cabc.Mapping[int, Scalar]
    ) -> Scalar:
        """Return ``B(left, right)`` for sparse vectors."""
        total = ZERO
        for i, a in left.items():
            for j, b in right.items():
                entry = self.basis_value(i, j)
                if not entry.is_zero:
                    total += a * b * entry
        return total

    def value(self, left: Vector, right: Vector) -> Scalar:
        """Return ``B(left, right)`` for dense vectors."""
        dim = self.n_even + self.m_odd
        if len(left) != dim or len(right) != dim:
            raise DimensionError.mismatch("form operand", dim, len(left))
        return self.sparse_value(core.to_sparse(left), core.to_sparse(right))

    def gram(self) -> Matrix:
        """Return the full Gram matrix over the ambient basis."""
        dim = self.n_even + self.m_odd
        return tuple(
            tuple(self.basis_value(i, j) for j in range(dim)) for i in range(dim)
        )

    def scaled(self, factor: ScalarLike) -> OddForm:
        """Return ``factor * B``."""
        return OddForm(
            self.n_even,
            self.m_odd,
            tuple(linalg.scale(row, factor) for row in self.pairing),
        )

    def is_nondegenerate(self) -> bool:
        """Return whether the pairing is square and invertible."""
        return self.n_even == self.m_odd and (
            linalg.rank(self.pairing, self.m_odd) == self.n_even
        )


def evaluate(form: OddForm, left: Vector, right: Vector) -> Scalar:
    """Return ``B(left, right)``."""
    return form.value(left, right)


def _check_shape(alg: SuperAlgebra, form: OddForm) -> None:
    if (form.n_even, form.m_odd) != (alg.n_even, alg.m_odd):
        raise FormError.shape(alg.n_even, alg.m_odd)


def invariance_violations(alg: SuperAlgebra, form: OddForm) -> list[str]:
    """Return every ordered basis triple with ``B([x,y],z) != B(x,[y,z])``."""
    _check_shape(alg, form)
    names = alg.names
    violations: list[str] = []
    for i, j, k in itertools.product(range(alg.dim), repeat=3):
        left = form.sparse_value(alg.basis_bracket(i, j), {k: Scalar.of(1)})
        right = form.sparse_value({i: Scalar.of(1)}, alg.basis_bracket(j, k))
        if left != right:
            violations.append(
                f"B([{names[i]},{names[j]}],{names[k]}) = {left} but "
                f"B({names[i]},[{names[j]},{names[k]}]) = {right}"
            )
    return violations


def verify_odd_quadratic(alg: SuperAlgebra, form: OddForm) -> Certificate:
    """
    Check that ``(alg, form)`` is odd-quadratic.

    Returns a certificate with the ``invariance`` and ``non-degeneracy``
    checks; the invariance witness lists offending triples.
    """
    _check_shape(alg, form)
    nondegenerate = form.is_nondegenerate()
    detail = (
        ()
        if nondegenerate
        else (f"pairing rank {linalg.rank(form.pairing, alg.m_odd)}",)
    )
    return Certificate(
        "odd-quadratic",
        (
            Check.from_violations("invariance", invariance_violations(alg, form)),
            Check("non-degeneracy", passed=nondegenerate, witness=detail),
        ),
    )


def require_odd_quadratic(alg: SuperAlgebra, form: OddForm, context: str) -> None:
    """Raise :class:`FormError` unless ``(alg, form)`` is odd-quadratic."""
    if not verify_odd_quadratic(alg, form).passed:
        raise FormError.not_odd_quadratic(context)


@dataclasses.dataclass(frozen=True, slots=True)
class Complement:
    """An orthogonal complement together with the isotropy verdict."""

    space: Subspace
    isotropic: bool


def orthogonal_complement(
    alg: SuperAlgebra, form: OddForm, space: Subspace
) -> Complement:
    """Return ``space^⊥`` and whether ``space`` is contained in it."""
    _check_shape(alg, form)
    gram = form.gram()
    functionals = [linalg.matvec(gram, row) for row in space.rows]
    complement = Subspace.span(linalg.kernel(functionals, alg.dim), alg.dim)
    return Complement(complement, space.is_subspace_of(complement))


def _symmetry_violations(alg: SuperAlgebra, form: OddForm) -> list[str]:
    names = alg.names
    odds = range(alg.n_even, alg.dim)
    violations: list[str] = []
    for i, j, k in itertools.product(odds, repeat=3):
        left = form.sparse_value(alg.basis_bracket(i, j), {k: Scalar.of(1)})
        right = form.sparse_value(alg.basis_bracket(j, k), {i: Scalar.of(1)})
        if left != right:
            violations.append(
                f"phi([{names[i]},{names[j]}])({names[k]}) = {left} but "
                f"phi([{names[j]},{names[k]}])({names[i]}) = {right}"
            )
    return violations


def phi_module_check(alg: SuperAlgebra, form: OddForm) -> Certificate:
    """
    Check that ``x -> B(x, .)`` is a ``g0``-module isomorphism ``g0 -> g1*``.

    Equivariance is ``B([a,x],y) + B(x,[a,y]) = 0`` for even ``a, x`` and odd
    ``y``; bijectivity is non-degeneracy of the pairing. The odd brackets must
    also satisfy ``phi([x,y])(z) = phi([y,z])(x)`` on every odd triple.
    """
    _check_shape(alg, form)
    names = alg.names
    violations: list[str] = []
    evens = range(alg.n_even)
    for a, x, y in itertools.product(evens, evens, range(alg.n_even, alg.dim)):
        value = form.sparse_value(alg.basis_bracket(a, x), {y: Scalar.of(1)})
        value += form.sparse_value({x: Scalar.of(1)}, alg.basis_bracket(a, y))
        if not value.is_zero:
            violations.append(
                f"B([{names[a]},{names[x]}],{names[y]}) + "
                f"B({names[x]},[{names[a]},{names[y]}]) = {value}"
            )
    return Certificate(
        "phi module isomorphism",
        (
            Check(
                "dimensions",
                passed=alg.n_even == alg.m_odd,
                witness=(f"n_even = {alg.n_even}, m_odd = {alg.m_odd}",),
            ),
            Check.from_violations("equivariance", violations),
            Check("bijective", passed=form.is_nondegenerate()),
            Check.from_violations("symmetry", _symmetry_violations(alg, form)),
        ),
    )


def ideal_report(alg: SuperAlgebra, form: OddForm, space: Subspace) -> Certificate:
    """
    Classify a subspace against the form.

    ``graded ideal`` must hold for the other verdicts to be meaningful;
    ``non-degenerate`` reports whether ``B`` restricted to the subspace is
    non-degenerate and ``isotropic`` whether the subspace lies in its own
    orthogonal.
    """
    restricted = [
        tuple(form.value(row, other) for other in space.rows) for row in space.rows
    ]
    nondegenerate = linalg.rank(restricted, space.dim) == space.dim
    return Certificate(
        "ideal",
        (
            Check("graded ideal", passed=core.is_graded_ideal(alg, space)),
            Check("non-degenerate", passed=nondegenerate),
            Check(
                "isotropic",
                passed=orthogonal_complement(alg, form, space).isotropic,
            ),
        ),
    )


def transport_form(alg: SuperAlgebra, form: OddForm, transform: Matrix) -> OddForm:
    """Return the form ``B'`` with ``B'(P x, P y) = B(x, y)``."""
    _check_shape(alg, form)
    columns = linalg.transpose(linalg.inverse(transform))
    rows = [
        [form.value(columns[i], columns[alg.n_even + j]) for j in range(alg.m_odd)]
        for i in range(alg.n_even)
    ]
    return OddForm(alg.n_even, alg.m_odd, linalg.matrix(rows))


def direct_sum(
    left: SuperAlgebra,
    right: SuperAlgebra,
    left_form: OddForm,
    right_form: OddForm,
) -> tuple[SuperAlgebra, OddForm]:
    """
    Return the orthogonal direct sum of two odd-quadratic algebras.

    Raises
    ------
    FormError
        If either summand is not odd-quadratic.
    """
    require_odd_quadratic(left, left_form, "left summand")
    require_odd_quadratic(right, right_form, "right summand")
    algebra, left_map, right_map = core.direct_sum_algebras(left, right)
    rows = [[ZERO] * algebra.m_odd for _ in range(algebra.n_even)]
    for mapping, summand, form in (
        (left_map, left, left_form),
        (right_map, right, right_form),
    ):
        for i in range(summand.n_even):
            for j in range(summand.m_odd):
                target_odd = mapping[summand.n_even + j] - algebra.n_even
                rows[mapping[i]][target_odd] = form.pairing[i][j]
    return algebra, OddForm(algebra.n_even, algebra.m_odd, linalg.matrix(rows))

