"""
Double extensions of odd-quadratic Lie superalgebras and their inverse.

The generalized odd double extension of ``(g, B)`` by ``(D, X0, lambda0)`` is
``t = g ⊕ K e* ⊕ K e`` with the even ``e*`` placed last in the even block and
the odd ``e`` last in the odd block:

* ``[e, e] = X0 + lambda0 e*``
* ``[e, X] = D(X) - (-1)^|X| B(X, X0) e*``
* ``[X, Y] = [X, Y]_g + B(D(X), Y) e*``
* ``e*`` is central, ``B(e*, e) = 1`` and ``e, e*`` are orthogonal to ``g``.

:func:`decompose_weak_filiform` inverts the construction and
:func:`decomposition_tower` iterates it down to a flag of length two.
"""

from __future__ import annotations

import dataclasses
import logging
import typing as typ

from oddquad import core, linalg
from oddquad.derivations import (
    ExtensionData,
    GradedMap,
    OddDerivation,
    derivation_violations,
    validate_extension_data,
)
from oddquad.errors import ExtensionError, ExtensionFault, FlagError
from oddquad.flags import Flag, detect_weak_filiform
from oddquad.forms import OddForm, invariance_violations, verify_odd_quadratic
from oddquad.linalg import Matrix, Subspace, Vector
from oddquad.scalar import ONE, ZERO, Scalar

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, slots=True)
class ExtensionWitness:
    """
    How a smaller algebra sits inside a larger one.

    Attributes
    ----------
    embedding : Matrix
        Columns are the images of the smaller algebra's basis in the larger
        algebra's coordinates.
    e, e_star : Vector
        The added odd and even vectors in the larger algebra's coordinates.
    identification : Matrix | None
        For a decomposition, the coordinate transform from the re-extended
        algebra onto the original, accepted by :func:`core.change_basis`.
    """

    embedding: Matrix
    e: Vector
    e_star: Vector
    identification: Matrix | None = None


@dataclasses.dataclass(frozen=True, slots=True)
class ExtensionResult:
    """An extension together with its form, flag and witness."""

    algebra: SuperAlgebra
    form: OddForm
    flag: Flag
    witness: ExtensionWitness


@dataclasses.dataclass(frozen=True, slots=True)
class DerivationAction:
    """
    A Lie superalgebra ``h`` acting on ``(g, B)`` by B-skew derivations.

    Attributes
    ----------
    h : SuperAlgebra
        The acting superalgebra.
    psi : tuple[GradedMap, ...]
        One derivation of ``g`` per basis vector of ``h``, of matching parity.
    gamma : OddForm | None
        Odd symmetric invariant form on ``h``; ``None`` means zero.
    """

    h: SuperAlgebra
    psi: tuple[GradedMap, ...]
    gamma: OddForm | None = None


@dataclasses.dataclass(frozen=True, slots=True)
class Decomposition:
    """One decomposition step ``g = ext(h, D, X0, lambda0)``."""

    algebra: SuperAlgebra
    form: OddForm
    data: ExtensionData
    flag: Flag
    witness: ExtensionWitness


def _check_output(alg: SuperAlgebra, form: OddForm, construction: str) -> None:
    if core.jacobi_violations(alg):
        raise ExtensionFault.failed(construction, "super Jacobi")
    if not verify_odd_quadratic(alg, form).passed:
        raise ExtensionFault.failed(construction, "odd-quadratic verification")


def _extension_table(
    g: SuperAlgebra, form: OddForm, data: ExtensionData
) -> dict[tuple[int, int], dict[int, Scalar]]:
    n, m = g.n_even, g.m_odd
    star, e = n, n + 1 + m

    def lift(index: int) -> int:
        return index if index < n else index + 1

    def lift_vector(values: Vector) -> dict[int, Scalar]:
        return {lift(i): value for i, value in enumerate(values) if not value.is_zero}

    op = data.derivation.as_graded()
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for a in range(g.dim):
        for b in range(a, g.dim):
            product = lift_vector(core.to_dense(g.basis_bracket(a, b), g.dim))
            core.accumulate(product, {star: form.value(op.image(a), g.unit(b))})
            table[lift(a), lift(b)] = product
        # [X, e] = -(-1)^|X| [e, X]
        sign = ONE if g.parity(a) else -ONE
        e_bracket = lift_vector(op.image(a))
        parity_sign = -ONE if g.parity(a) else ONE
        paired = form.value(g.unit(a), data.x0)
        core.accumulate(e_bracket, {star: -parity_sign * paired})
        table[lift(a), e] = {index: sign * value for index, value in e_bracket.items()}
    square = lift_vector(data.x0)
    core.accumulate(square, {star: data.lambda0})
    table[e, e] = square
    return table


def generalized_odd_double_extension(
    g: SuperAlgebra,
    form: OddForm,
    data: ExtensionData,
    *,
    names: tuple[str, str] = ("e*", "e"),
) -> ExtensionResult:
    """
    Build the generalized odd double extension of ``(g, B)``.

    Parameters
    ----------
    g, form : SuperAlgebra, OddForm
        A weak filiform odd-quadratic algebra.
    data : ExtensionData
        ``(D, X0, lambda0)``; validated before construction.
    names : tuple[str, str]
        Names of the added even and odd basis vectors.

    Raises
    ------
    ExtensionError
        If ``data`` fails validation.
    ExtensionFault
        If the output fails super Jacobi, odd-quadratic verification or the
        flag of length ``m + 1``.
    """
    detection = detect_weak_filiform(g)
    if detection.flag is None:
        raise FlagError.not_weak_filiform(detection.chain_dims)
    certificate = validate_extension_data(g, form, data, detection.flag)
    if not certificate.passed:
        raise ExtensionError.invalid_data(certificate.failures())
    star_name, e_name = names
    table = _extension_table(g, form, data)
    algebra = core.SuperAlgebra.from_table(
        (*g.even, star_name), (*g.odd, e_name), table
    )
    n, m = g.n_even, g.m_odd
    rows = [[*row, ZERO] for row in form.pairing]
    rows.append([ZERO] * m + [ONE])
    extended_form = OddForm(n + 1, m + 1, linalg.matrix(rows))
    _check_output(algebra, extended_form, "generalized odd double extension")
    extended = detect_weak_filiform(algebra)
    if extended.flag is None or extended.flag.length != m + 1:
        raise ExtensionFault.failed(
            "generalized odd double extension", "weak filiform flag"
        )
    embedding = linalg.transpose(
        tuple(algebra.unit(index if index < n else index + 1) for index in range(g.dim))
    )
    witness = ExtensionWitness(embedding, algebra.unit(e_name), algebra.unit(star_name))
    logger.info("extended %d-dimensional algebra to dimension %d", g.dim, algebra.dim)
    return ExtensionResult(algebra, extended_form, extended.flag, witness)


@dataclasses.dataclass(frozen=True, slots=True)
class _Splitting:
    """Coordinates of ``g = h ⊕ K e* ⊕ K e_m``."""

    alg: SuperAlgebra
    form: OddForm
    e_star: Vector
    e_m: Vector
    h_even: Subspace
    h_odd: Subspace

    def split(self, values: Vector) -> tuple[Vector, Scalar, Scalar]:
        """Return the h-part, the ``e*`` coefficient and the ``e_m`` coefficient."""
        star = self.form.value(values, self.e_m)
        top = self.form.value(self.e_star, values)
        rest = linalg.sub_vectors(
            values,
            linalg.add_vectors(
                linalg.scale(self.e_star, star), linalg.scale(self.e_m, top)
            ),
        )
        return rest, star, top

    def h_coordinates(self, values: Vector) -> Vector:
        """Return coordinates of an h-vector in the h basis (even then odd)."""
        return self.h_even.coordinates(values) + self.h_odd.coordinates(values)

    @property
    def h_basis(self) -> tuple[Vector, ...]:
        """Return the h basis in ``g`` coordinates."""
        return self.h_even.rows + self.h_odd.rows


def _splitting(g: SuperAlgebra, form: OddForm, flag: Flag) -> _Splitting:
    center = core.center(g).intersection(g.even_subspace())
    if center.dim != 1:
        raise ExtensionError.center_not_line(center.dim)
    e_m = flag.top
    pairing = form.value(center.rows[0], e_m)
    if pairing.is_zero:
        raise ExtensionError.orthogonal_pairing()
    e_star = linalg.scale(center.rows[0], pairing.inverse())
    n = g.n_even
    even_functional = [tuple(form.value(g.unit(i), e_m) for i in range(n))]
    odd_functional = [tuple(form.value(e_star, g.unit(n + j)) for j in range(g.m_odd))]
    h_even = [
        solution + (ZERO,) * g.m_odd for solution in linalg.kernel(even_functional, n)
    ]
    h_odd = [
        (ZERO,) * n + solution
        for solution in linalg.kernel(odd_functional, g.m_odd)
    ]
    return _Splitting(
        g,
        form,
        e_star,
        e_m,
        Subspace.span(h_even, g.dim),
        Subspace.span(h_odd, g.dim),
    )


def _h_names(g: SuperAlgebra, basis: cabc.Sequence[Vector]) -> list[str]:
    names: list[str] = []
    for position, values in enumerate(basis):
        support = [index for index, entry in enumerate(values) if not entry.is_zero]
        if len(support) == 1 and values[support[0]] == 1:
            names.append(g.names[support[0]])
        else:
            names.append(f"h{position + 1}")
    return names


def _h_algebra(split: _Splitting) -> tuple[SuperAlgebra, OddForm]:
    g = split.alg
    basis = split.h_basis
    n_h = split.h_even.dim
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for a, left in enumerate(basis):
        for b in range(a, len(basis)):
            rest, _, top = split.split(g.bracket(left, basis[b]))
            if not top.is_zero:
                raise ExtensionFault.failed(
                    "decomposition", "h closed under the bracket"
                )
            table[a, b] = core.to_sparse(split.h_coordinates(rest))
    names = _h_names(g, basis)
    algebra = core.SuperAlgebra.from_table(names[:n_h], names[n_h:], table)
    pairing = [
        [split.form.value(even, odd) for odd in split.h_odd.rows]
        for even in split.h_even.rows
    ]
    return algebra, OddForm(n_h, split.h_odd.dim, linalg.matrix(pairing))


def _h_data(split: _Splitting, h: SuperAlgebra) -> ExtensionData:
    g = split.alg
    full = [[ZERO] * h.dim for _ in range(h.dim)]
    for column, values in enumerate(split.h_basis):
        rest, _, _ = split.split(g.bracket(split.e_m, values))
        for row, entry in enumerate(split.h_coordinates(rest)):
            full[row][column] = entry
    derivation = OddDerivation.from_full(h, linalg.matrix(full))
    rest, star, _ = split.split(g.bracket(split.e_m, split.e_m))
    return ExtensionData(derivation, split.h_coordinates(rest), star)


def decompose_weak_filiform(
    g: SuperAlgebra, form: OddForm, flag: Flag
) -> Decomposition:
    """
    Write ``(g, B)`` as a generalized odd double extension of a smaller algebra.

    ``e*`` spans the even center and is scaled so that ``B(e*, e_m) = 1``;
    ``h`` is the orthogonal of ``K e* ⊕ K e_m``. ``D`` and ``X0, lambda0`` are
    read off ``[e_m, X]`` and ``[e_m, e_m]``. The result is re-extended and
    checked against ``g`` through the identification witness.

    Raises
    ------
    FlagError
        If the flag is shorter than three.
    ExtensionError
        If the even center is not a line or is orthogonal to ``e_m``.
    """
    if flag.length < 3:
        raise FlagError.too_short(flag.length, 3)
    split = _splitting(g, form, flag)
    h, h_form = _h_algebra(split)
    data = _h_data(split, h)
    h_detection = detect_weak_filiform(h)
    if h_detection.flag is None:
        raise ExtensionFault.failed("decomposition", "truncated weak filiform flag")
    columns = (*split.h_even.rows, split.e_star, *split.h_odd.rows, split.e_m)
    identification = linalg.transpose(columns)
    rebuilt = generalized_odd_double_extension(h, h_form, data)
    if not core.change_basis(rebuilt.algebra, identification).same_constants(g):
        raise ExtensionFault.failed("decomposition", "round trip through the witness")
    witness = ExtensionWitness(
        linalg.transpose(split.h_basis), split.e_m, split.e_star, identification
    )
    logger.info("decomposed %d-dimensional algebra onto dimension %d", g.dim, h.dim)
    return Decomposition(h, h_form, data, h_detection.flag, witness)


def decomposition_tower(g: SuperAlgebra, form: OddForm) -> list[Decomposition]:
    """
    Decompose repeatedly until the flag has length two.

    Raises
    ------
    FlagError
        If ``g`` is not weak filiform.
    """
    detection = detect_weak_filiform(g)
    if detection.flag is None:
        raise FlagError.not_weak_filiform(detection.chain_dims)
    steps: list[Decomposition] = []
    current, current_form, flag = g, form, detection.flag
    while flag.length >= 3:
        step = decompose_weak_filiform(current, current_form, flag)
        steps.append(step)
        current, current_form, flag = step.algebra, step.form, step.flag
    return steps


def _check_action(g: SuperAlgebra, form: OddForm, action: DerivationAction) -> None:
    h, psi = action.h, action.psi
    if len(psi) != h.dim:
        raise ExtensionError.action_size(len(psi), h.dim)
    for index, op in enumerate(psi):
        if op.parity != h.parity(index) or derivation_violations(g, form, op):
            raise ExtensionError.not_graded_derivation(h.names[index])
    for z in range(h.dim):
        for w in range(z, h.dim):
            expected = psi[z].supercommutator(psi[w]).matrix
            actual = [[ZERO] * g.dim for _ in range(g.dim)]
            for target, value in h.basis_bracket(z, w).items():
                for r, row in enumerate(psi[target].matrix):
                    for c, entry in enumerate(row):
                        actual[r][c] += value * entry
            if linalg.matrix(actual) != expected:
                raise ExtensionError.not_morphism(h.names[z], h.names[w])


def central_extension(
    g: SuperAlgebra, form: OddForm, action: DerivationAction
) -> SuperAlgebra:
    """
    Return the central extension ``g ⊕ P(h*)`` defined by ``phi``.

    ``phi(X, Y)(Z) = (-1)^((|X|+|Y|)|Z|) B(psi(Z) X, Y)``. The basis is
    ``g0, P(h*)0 | g1, P(h*)1`` where ``P(h*)0`` holds the duals of odd
    vectors of ``h``; ``action.gamma`` is ignored.
    """
    _check_action(g, form, action)
    layout = _DoubleLayout(g, action, include_h=False)
    algebra = _build_double(layout, form)
    if core.jacobi_violations(algebra):
        raise ExtensionFault.failed("central extension", "super Jacobi")
    return algebra


class _DoubleLayout:
    """Index bookkeeping for ``t = g ⊕ h ⊕ P(h*)``."""

    def __init__(
        self, g: SuperAlgebra, action: DerivationAction, *, include_h: bool
    ) -> None:
        self.g = g
        self.h = action.h
        self.psi = action.psi
        h = action.h
        h_even = list(range(h.n_even)) if include_h else []
        h_odd = list(range(h.n_even, h.dim)) if include_h else []
        # (kind, local index) per t basis vector
        even = [("g", i) for i in range(g.n_even)]
        even += [("h", z) for z in h_even]
        even += [("f", w) for w in range(h.n_even, h.dim)]
        odd = [("g", i) for i in range(g.n_even, g.dim)]
        odd += [("h", w) for w in h_odd]
        odd += [("f", z) for z in range(h.n_even)]
        self.slots = even + odd
        self.n_even = len(even)
        self.position = {slot: index for index, slot in enumerate(self.slots)}

    def names(self) -> list[str]:
        """Return the t basis names."""
        labels = {"g": self.g.names, "h": self.h.names}
        return [
            f"{self.h.names[local]}*" if kind == "f" else labels[kind][local]
            for kind, local in self.slots
        ]

    def parity(self, index: int) -> int:
        """Return the t parity of a basis index."""
        return 0 if index < self.n_even else 1

    def lift(self, kind: str, values: cabc.Mapping[int, Scalar]) -> dict[int, Scalar]:
        """Move a sparse vector of one component into t coordinates."""
        return {self.position[kind, local]: value for local, value in values.items()}


def _phi(layout: _DoubleLayout, form: OddForm, a: int, b: int) -> dict[int, Scalar]:
    g, h = layout.g, layout.h
    result: dict[int, Scalar] = {}
    for z in range(h.dim):
        value = form.value(layout.psi[z].image(a), g.unit(b))
        if value.is_zero:
            continue
        if (g.parity(a) + g.parity(b)) * h.parity(z) % 2:
            value = -value
        result[layout.position["f", z]] = value
    return result


def _pi(layout: _DoubleLayout, z: int, w: int) -> dict[int, Scalar]:
    """
    Return ``pi(Z)(W*)`` with ``pi(Z)(f)(Y) = -(-1)^(|Z||f|) f([Z, Y])``.

    ``|f|`` is the parity in ``P(h*)``, so ``|W*| = |W| + 1``.
    """
    h = layout.h
    result: dict[int, Scalar] = {}
    for y in range(h.dim):
        value = h.basis_bracket(z, y).get(w, ZERO)
        if value.is_zero:
            continue
        sign = ONE if h.parity(z) * (h.parity(w) + 1) % 2 else -ONE
        result[layout.position["f", y]] = sign * value
    return result


def _ordered_product(
    layout: _DoubleLayout,
    form: OddForm,
    left: tuple[str, int],
    right: tuple[str, int],
) -> dict[int, Scalar] | None:
    """Return the product when the pair is in a handled order, else ``None``."""
    g, h = layout.g, layout.h
    match left[0], right[0]:
        case "g", "g":
            product = layout.lift("g", g.basis_bracket(left[1], right[1]))
            core.accumulate(product, _phi(layout, form, left[1], right[1]))
            return product
        case "h", "h":
            return layout.lift("h", h.basis_bracket(left[1], right[1]))
        case "h", "g":
            image = core.to_sparse(layout.psi[left[1]].image(right[1]))
            return layout.lift("g", image)
        case "h", "f":
            return _pi(layout, left[1], right[1])
        case ("g", "f") | ("f", "f") | ("f", "g"):
            return {}
        case _:
            return None


def _build_double(layout: _DoubleLayout, form: OddForm) -> SuperAlgebra:
    table: dict[tuple[int, int], dict[int, Scalar]] = {}
    for u, left in enumerate(layout.slots):
        for v in range(u, len(layout.slots)):
            right = layout.slots[v]
            product = _ordered_product(layout, form, left, right)
            if product is None:
                product = _ordered_product(layout, form, right, left) or {}
                sign = ONE if layout.parity(u) * layout.parity(v) else -ONE
                product = {index: sign * value for index, value in product.items()}
            table[u, v] = product
    names = layout.names()
    return core.SuperAlgebra.from_table(
        names[: layout.n_even], names[layout.n_even :], table
    )


def odd_double_extension(
    g: SuperAlgebra, form: OddForm, action: DerivationAction
) -> tuple[SuperAlgebra, OddForm]:
    """
    Build the odd double extension ``t = g ⊕ h ⊕ P(h*)``.

    ``action.psi`` gives one homogeneous B-skew derivation of ``g`` per basis
    vector of ``h`` and must preserve brackets; ``action.gamma`` is an
    invariant odd form on ``h`` and may be degenerate. The basis of ``t`` is
    ``g0, h0, (h1)* | g1, h1, (h0)*``.

    Raises
    ------
    ExtensionError
        If ``psi`` or ``gamma`` fail their conditions.
    ExtensionFault
        If the output fails super Jacobi or odd-quadratic verification.
    """
    _check_action(g, form, action)
    gamma = OddForm.zero(action.h) if action.gamma is None else action.gamma
    if invariance_violations(action.h, gamma):
        raise ExtensionError.gamma_not_invariant()
    layout = _DoubleLayout(g, action, include_h=True)
    algebra = _build_double(layout, form)
    extended_form = _double_form(layout, form, gamma)
    _check_output(algebra, extended_form, "odd double extension")
    return algebra, extended_form


def _double_form(layout: _DoubleLayout, form: OddForm, gamma: OddForm) -> OddForm:
    n_even = layout.n_even
    m_odd = len(layout.slots) - n_even
    rows = [[ZERO] * m_odd for _ in range(n_even)]
    for u in range(n_even):
        kind_u, local_u = layout.slots[u]
        for v in range(m_odd):
            kind_v, local_v = layout.slots[n_even + v]
            if kind_u == kind_v == "g":
                rows[u][v] = form.basis_value(local_u, local_v)
            elif kind_u == kind_v == "h":
                rows[u][v] = gamma.basis_value(local_u, local_v)
            elif {kind_u, kind_v} == {"h", "f"} and local_u == local_v:
                rows[u][v] = ONE
    return OddForm(n_even, m_odd, linalg.matrix(rows))
