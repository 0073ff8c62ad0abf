"""
Named odd-quadratic Lie superalgebras used as fixtures and CLI output.

Keys are written ``name`` or ``name:param,param,...``::

    abelian2
    model_filiform:5
    example_dualpair:4
    example_coadjoint:4
    g6:1            (delta; optional lambda, alpha, beta)
    g8:2,1,0,0      (variant, lambda, alpha, beta)

An entry's own ``key`` lists the form parameters only when they differ from
the defaults ``1, 0, 0``.
"""

from __future__ import annotations

import dataclasses
import typing as typ
from fractions import Fraction

from oddquad import core
from oddquad.errors import SchemaError
from oddquad.forms import OddForm
from oddquad.scalar import ZERO, Scalar

if typ.TYPE_CHECKING:
    import collections.abc as cabc

    from oddquad.core import SuperAlgebra

HALF: typ.Final = Fraction(1, 2)


@dataclasses.dataclass(frozen=True, slots=True)
class ExpectedProperties:
    """Facts a catalog entry must exhibit."""

    center_dims: tuple[int, int, int]
    chain_dims: tuple[int, ...]
    weak_filiform: bool
    odd_quadratic: bool
    jacobi_valid: bool = True


@dataclasses.dataclass(frozen=True, slots=True)
class CatalogEntry:
    """An algebra, its form when it has one, and the expected properties."""

    key: str
    algebra: SuperAlgebra
    form: OddForm | None
    expected: ExpectedProperties


def _weak_chain(m: int) -> tuple[int, ...]:
    return (*range(m, 1, -1), 0)


def abelian2() -> CatalogEntry:
    """Return ``span{X | e}`` with zero product and ``B(X, e) = 1``."""
    algebra = core.SuperAlgebra(("X",), ("e",))
    form = OddForm.from_entries(algebra, {("X", "e"): 1})
    return CatalogEntry(
        "abelian2", algebra, form, ExpectedProperties((2, 1, 1), (1, 0), False, True)
    )


def model_filiform(m: int) -> CatalogEntry:
    """Return ``span{X1 | e1..em}`` with ``[X1, e_i] = e_(i-1)``; no form."""
    _require(m >= 3, f"model_filiform:{m}")
    odd = tuple(f"e{i}" for i in range(1, m + 1))
    brackets = {("X1", f"e{i}"): {f"e{i - 1}": 1} for i in range(2, m + 1)}
    algebra = core.SuperAlgebra.from_brackets(("X1",), odd, brackets)
    expected = ExpectedProperties((1, 0, 1), (*range(m, 0, -1), 0), False, False)
    return CatalogEntry(f"model_filiform:{m}", algebra, None, expected)


def cotangent_superalgebra(
    lie: SuperAlgebra, dual_names: cabc.Sequence[str]
) -> tuple[SuperAlgebra, OddForm]:
    """
    Return ``m ⊕ P(m*)`` for a Lie algebra ``m`` given as an even-only algebra.

    The product is ``[X+f, Y+h] = [X,Y] - h∘ad_X + f∘ad_Y`` and the form is
    ``B(X, f) = f(X)``.
    """
    n = lie.n_even
    table: dict[tuple[int, int], dict[int, Scalar]] = dict(lie.table)
    for i in range(n):
        for j in range(n):
            # -(f_j ∘ ad X_i) = -sum_k f_j([X_i, X_k]) f_k
            image = {
                n + k: -lie.basis_bracket(i, k).get(j, ZERO)
                for k in range(n)
                if not lie.basis_bracket(i, k).get(j, ZERO).is_zero
            }
            if image:
                table[i, n + j] = image
    algebra = core.SuperAlgebra.from_table(lie.even, tuple(dual_names), table)
    form = OddForm.from_entries(
        algebra,
        {(name, dual): 1 for name, dual in zip(lie.even, dual_names, strict=True)},
    )
    return algebra, form


def _filiform_lie(m: int, prefix: str) -> SuperAlgebra:
    even = tuple(f"{prefix}{i}" for i in range(1, m + 1))
    brackets = {
        (f"{prefix}1", f"{prefix}{i}"): {f"{prefix}{i + 1}": 1} for i in range(2, m)
    }
    return core.SuperAlgebra.from_brackets(even, (), brackets)


def example_dualpair(m: int) -> CatalogEntry:
    """
    Return the filiform Lie algebra ``L_m`` doubled by its shifted dual.

    The table ``[X1, Xi*] = -X(i-1)*`` for ``i >= 3`` and
    ``[Xi, X(i+1)*] = X1*`` is written out and checked against the coadjoint
    formula.
    """
    _require(m >= 3, f"example_dualpair:{m}")
    even = tuple(f"X{i}" for i in range(1, m + 1))
    odd = tuple(f"X{i}*" for i in range(1, m + 1))
    brackets: dict[tuple[str, str], dict[str, int]] = {
        ("X1", f"X{i}"): {f"X{i + 1}": 1} for i in range(2, m)
    }
    brackets |= {("X1", f"X{i}*"): {f"X{i - 1}*": -1} for i in range(3, m + 1)}
    brackets |= {(f"X{i}", f"X{i + 1}*"): {"X1*": 1} for i in range(2, m)}
    algebra = core.SuperAlgebra.from_brackets(even, odd, brackets)
    reference, form = cotangent_superalgebra(_filiform_lie(m, "X"), odd)
    if not algebra.same_constants(reference):
        raise SchemaError.catalog_key(
            f"example_dualpair:{m} (table disagrees with formula)"
        )
    expected = ExpectedProperties((3, 1, 2), _weak_chain(m), True, True)
    return CatalogEntry(f"example_dualpair:{m}", algebra, form, expected)


def example_coadjoint(m: int) -> CatalogEntry:
    """Return ``g~_m ⊕ P(g~_m*)`` with ``[e1, e_i] = e_(i-1)`` for ``3 <= i <= m``."""
    _require(m >= 3, f"example_coadjoint:{m}")
    even = tuple(f"e{i}" for i in range(1, m + 1))
    brackets = {("e1", f"e{i}"): {f"e{i - 1}": 1} for i in range(3, m + 1)}
    lie = core.SuperAlgebra.from_brackets(even, (), brackets)
    algebra, form = cotangent_superalgebra(lie, tuple(f"f{i}" for i in range(1, m + 1)))
    expected = ExpectedProperties((3, 1, 2), _weak_chain(m), True, True)
    return CatalogEntry(f"example_coadjoint:{m}", algebra, form, expected)


def g6(
    delta: int = 0,
    lam: Fraction | int = 1,
    alpha: Fraction | int = 0,
    beta: Fraction | int = 0,
) -> CatalogEntry:
    """Return ``g^delta_6`` with the form of parameters ``lambda, alpha, beta``."""
    _require(delta in {0, 1} and lam != 0, f"g6:{delta},{lam}")
    brackets: dict[tuple[str, str], dict[str, int]] = {
        ("X1", "X2"): {"X3": 1},
        ("X1", "e3"): {"u2": 1},
        ("X2", "e3"): {"v2": 1},
    }
    if delta:
        brackets["e3", "e3"] = {"X3": 1}
    algebra = core.SuperAlgebra.from_brackets(
        ("X1", "X2", "X3"), ("e3", "u2", "v2"), brackets
    )
    form = OddForm.from_entries(
        algebra,
        {
            ("X1", "v2"): lam,
            ("X2", "u2"): -lam,
            ("X3", "e3"): lam,
            ("X1", "e3"): alpha,
            ("X2", "e3"): beta,
        },
    )
    expected = ExpectedProperties((3, 1, 2), (3, 2, 0), True, True)
    key = _form_key("g6", delta, lam, alpha, beta)
    return CatalogEntry(key, algebra, form, expected)


def g8(
    variant: int = 0,
    lam: Fraction | int = 1,
    alpha: Fraction | int = 0,
    beta: Fraction | int = 0,
) -> CatalogEntry:
    """Return ``g^variant_8`` with the form of parameters ``lambda, alpha, beta``."""
    _require(variant in {0, 1, 2} and lam != 0, f"g8:{variant},{lam}")
    brackets: dict[tuple[str, str], dict[str, Fraction | int]] = {
        ("X1", "X2"): {"X3": 1},
        ("X1", "X3"): {"X4": 1},
        ("X1", "e3"): {"u2": 1},
        ("X2", "e3"): {"v2": 1},
        ("X1", "e4"): {"e3": 1},
        ("X3", "e4"): {"v2": -1},
    }
    if variant == 1:
        brackets["e4", "e4"] = {"X4": 1}
    elif variant == 2:
        brackets |= {
            ("e4", "e4"): {"X2": 1},
            ("e3", "e4"): {"X3": HALF},
            ("e3", "e3"): {"X4": -HALF},
            ("u2", "e4"): {"X4": 1},
        }
    algebra = core.SuperAlgebra.from_brackets(
        ("X1", "X2", "X3", "X4"), ("e4", "e3", "u2", "v2"), brackets
    )
    form = OddForm.from_entries(
        algebra,
        {
            ("X1", "v2"): lam,
            ("X2", "u2"): -lam,
            ("X3", "e3"): lam,
            ("X4", "e4"): -lam,
            ("X1", "e4"): alpha,
            ("X2", "e4"): beta,
        },
    )
    center = (2, 1, 1) if variant == 2 else (3, 1, 2)
    expected = ExpectedProperties(center, (4, 3, 2, 0), True, True)
    key = _form_key("g8", variant, lam, alpha, beta)
    return CatalogEntry(key, algebra, form, expected)


def _form_key(name: str, index: int, *form_params: Fraction | int) -> str:
    """Return ``name:index``, adding the form parameters unless they are ``1, 0, 0``."""
    if tuple(form_params) == (1, 0, 0):
        return f"{name}:{index}"
    return ",".join([f"{name}:{index}", *(str(Fraction(p)) for p in form_params)])



def _require(condition: bool, key: str) -> None:  # noqa: FBT001
    if not condition:
        raise SchemaError.catalog_key(key)


CATALOG_KEYS: typ.Final = (
    "abelian2",
    "model_filiform:4",
    "example_dualpair:4",
    "example_coadjoint:4",
    "g6:0",
    "g6:1",
    "g8:0",
    "g8:1",
    "g8:2",
)


def _parse_params(text: str) -> list[Fraction]:
    try:
        return [Fraction(part.replace("−", "-")) for part in text.split(",") if part]
    except (ValueError, ZeroDivisionError) as err:
        raise SchemaError.catalog_key(text) from err


def build(key: str) -> CatalogEntry:
    """
    Return the catalog entry for ``key``.

    Raises
    ------
    SchemaError
        For unknown names or parameters outside the allowed ranges.
    """
    name, _, raw = key.partition(":")
    params = _parse_params(raw)
    if name == "abelian2" and not params:
        return abelian2()
    integer_builders: dict[str, cabc.Callable[[int], CatalogEntry]] = {
        "model_filiform": model_filiform,
        "example_dualpair": example_dualpair,
        "example_coadjoint": example_coadjoint,
    }
    if name in integer_builders and len(params) == 1 and params[0].denominator == 1:
        return integer_builders[name](int(params[0]))
    if name in {"g6", "g8"} and 1 <= len(params) <= 4 and params[0].denominator == 1:
        builder = g6 if name == "g6" else g8
        rest = params[1:] + [Fraction(1), Fraction(0), Fraction(0)][len(params) - 1 :]
        return builder(int(params[0]), *rest)
    raise SchemaError.catalog_key(key)
