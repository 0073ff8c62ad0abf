"""
Skeletons, constraint tables and normalisation plans for dimensions 6 and 8.

Each plan fixes the even Lie algebra and the flag action in normal form,
names the unknown odd-odd brackets, and lists the Jacobi and invariance
triples in the order the elimination walks through them. The ``consequence``
column is what the row is expected to establish; the pipeline checks it
against the substitutions in force after the row.
"""

from __future__ import annotations

import dataclasses
import typing as typ
from fractions import Fraction

from oddquad.classify.params import CoefficientText, ParamAlgebra, ParamForm, ParamRing
from oddquad.errors import UnsupportedRequestError

if typ.TYPE_CHECKING:
    import collections.abc as cabc

JACOBI: typ.Final = "jacobi"
INVARIANCE: typ.Final = "invariance"

type Brackets = dict[tuple[str, str], dict[str, CoefficientText]]


@dataclasses.dataclass(frozen=True, slots=True)
class TableRow:
    """One row of a constraint table."""

    kind: str
    triple: tuple[str, str, str]
    consequence: str


@dataclasses.dataclass(frozen=True, slots=True)
class Shear:
    """Replace basis vectors by combinations with textual coefficients."""

    replacements: cabc.Mapping[str, cabc.Mapping[str, str]]


@dataclasses.dataclass(frozen=True, slots=True)
class OddScale:
    """Scale the odd block by ``1/sqrt(parameter)``."""

    parameter: str


type NormalStep = Shear | OddScale


@dataclasses.dataclass(frozen=True, slots=True)
class BranchPlan:
    """A normal-form branch: its condition, a sample point and its basis changes."""

    label: str
    catalog_key: str
    condition: str
    sample: cabc.Mapping[str, Fraction]
    steps: tuple[NormalStep, ...]


@dataclasses.dataclass(frozen=True)
class ClassificationPlan:
    """
    Everything the pipeline needs for one dimension.

    ``unknown_pairs`` maps odd pairs to the prefix of their coefficient
    names; ``prefix_Xk`` is the coefficient of the even basis vector ``Xk``.
    ``named_pairs`` fixes odd-odd brackets written with explicit names.
    """

    dim: int
    even: tuple[str, ...]
    odd: tuple[str, ...]
    even_brackets: Brackets
    action: Brackets
    leading: tuple[str, ...]
    unknown_pairs: cabc.Mapping[tuple[str, str], str]
    named_pairs: Brackets
    parameters: tuple[str, ...]
    action_rows: tuple[TableRow, ...]
    jacobi_rows: tuple[TableRow, ...]
    invariance_rows: tuple[TableRow, ...]
    follow_up_rows: tuple[TableRow, ...]
    scale_entry: tuple[str, str]
    free_form_entries: tuple[tuple[str, str], ...]
    branches: tuple[BranchPlan, ...]

    def _pair_names(self) -> list[str]:
        return [
            f"{prefix}_{even}"
            for prefix in self.unknown_pairs.values()
            for even in self.even
        ]

    def form_names(self) -> list[str]:
        """Return the ``B_<even>_<odd>`` names with the scale entry last."""
        scale = ParamForm.entry_name(*self.scale_entry)
        names = [
            ParamForm.entry_name(even, odd) for even in self.even for odd in self.odd
        ]
        names.remove(scale)
        return [*names, scale]

    def ring(self) -> ParamRing:
        """Return the coefficient ring in elimination order."""
        return ParamRing(
            (*self.leading, *self._pair_names(), *self.parameters, *self.form_names())
        )

    def skeleton(self, ring: ParamRing) -> ParamAlgebra:
        """Return the parametric algebra before any constraint is applied."""
        brackets: Brackets = {**self.even_brackets, **self.action, **self.named_pairs}
        for pair, prefix in self.unknown_pairs.items():
            brackets[pair] = {even: f"{prefix}_{even}" for even in self.even}
        return ParamAlgebra.from_brackets(ring, (self.even, self.odd), brackets)

    def even_algebra(self, ring: ParamRing) -> ParamAlgebra:
        """Return the even Lie algebra alone."""
        return ParamAlgebra.from_brackets(ring, (self.even, ()), self.even_brackets)

    def scale_name(self) -> str:
        """Return the indeterminate playing the role of ``lambda``."""
        return ParamForm.entry_name(*self.scale_entry)

    def form_defaults(self) -> dict[str, Fraction]:
        """Return ``lambda = 1`` and zero for the free form entries."""
        defaults = {
            ParamForm.entry_name(*entry): Fraction(0)
            for entry in self.free_form_entries
        }
        defaults[self.scale_name()] = Fraction(1)
        return defaults


def _rows(
    kind: str, rows: cabc.Sequence[tuple[str, str, str, str]]
) -> tuple[TableRow, ...]:
    return tuple(
        TableRow(kind, (x, y, z), consequence) for x, y, z, consequence in rows
    )


DIM6_JACOBI: typ.Final = _rows(
    JACOBI,
    (
        ("e3", "e3", "e3", "a = b = 0"),
        ("X1", "e3", "e3", "[u2,e3] = 0"),
        ("X2", "e3", "e3", "[v2,e3] = 0"),
        ("X1", "e3", "u2", "[u2,u2] = 0"),
        ("X2", "e3", "v2", "[v2,v2] = 0"),
        ("X1", "e3", "v2", "[u2,v2] = 0"),
    ),
)

DIM6_INVARIANCE: typ.Final = _rows(
    INVARIANCE,
    (
        ("X1", "X1", "e3", "B(X1,u2) = 0"),
        ("X2", "X2", "e3", "B(X2,v2) = 0"),
        ("X3", "X1", "e3", "B(X3,u2) = 0"),
        ("X3", "X2", "e3", "B(X3,v2) = 0"),
        ("X1", "X2", "e3", "B(X3,e3) = B(X1,v2)"),
        ("X2", "X1", "e3", "B(X3,e3) = -B(X2,u2)"),
    ),
)

DIM6_PLAN: typ.Final = ClassificationPlan(
    dim=6,
    even=("X1", "X2", "X3"),
    odd=("e3", "u2", "v2"),
    even_brackets={("X1", "X2"): {"X3": 1}},
    action={("X1", "e3"): {"u2": 1}, ("X2", "e3"): {"v2": 1}},
    leading=(),
    unknown_pairs={
        ("e3", "u2"): "e3u2",
        ("e3", "v2"): "e3v2",
        ("u2", "u2"): "u2u2",
        ("u2", "v2"): "u2v2",
        ("v2", "v2"): "v2v2",
    },
    named_pairs={("e3", "e3"): {"X1": "a", "X2": "b", "X3": "c"}},
    parameters=("a", "b", "c"),
    action_rows=(),
    jacobi_rows=DIM6_JACOBI,
    invariance_rows=DIM6_INVARIANCE,
    follow_up_rows=(),
    scale_entry=("X3", "e3"),
    free_form_entries=(("X1", "e3"), ("X2", "e3")),
    branches=(
        BranchPlan("g0_6", "g6:0", "c = 0", {"c": Fraction(0)}, ()),
        BranchPlan("g1_6", "g6:1", "c != 0", {"c": Fraction(4)}, (OddScale("c"),)),
    ),
)

DIM8_ACTION: typ.Final = _rows(
    JACOBI,
    (("X1", "X2", "e4", "[X3,e4] = d24*u2 - v2"),),
)

DIM8_JACOBI: typ.Final = _rows(
    JACOBI,
    (
        ("X1", "e4", "e4", "[e3,e4] = 1/2*(a44_2*X3 + a44_3*X4)"),
        ("e3", "e3", "e3", "a33_1 = a33_2 = 0"),
        ("X1", "e3", "e4", "[u2,e4] = -a33_3*X3 + (1/2*a44_2 - a33_4)*X4"),
        ("X1", "u2", "e4", "[u2,e3] = -a33_3*X4"),
        ("X1", "e3", "e3", "a33_3 = 0"),
        ("X2", "e3", "e3", "[v2,e3] = 0"),
        ("X1", "u2", "e3", "[u2,u2] = 0"),
        ("X2", "u2", "e3", "[v2,u2] = 0"),
        ("X2", "v2", "e3", "[v2,v2] = 0"),
        ("X2", "e3", "e4", "[v2,e4] = -d24*a33_4*X4"),
        (
            "X2",
            "e4",
            "e4",
            "a44_1 = -d24*a44_2; "
            "d24*a44_3 + a24*a44_2 - 2*a24*a33_4 - 2*b24*d24*a33_4 = 0",
        ),
        ("e4", "e4", "e4", "a44_3 = b24*a44_2; a44_2*(a24 + b24*d24) = 0"),
    ),
)

DIM8_INVARIANCE: typ.Final = _rows(
    INVARIANCE,
    (
        ("X1", "X1", "e4", "B(X1,e3) = 0"),
        ("X1", "X1", "e3", "B(X1,u2) = 0"),
        ("X2", "X2", "e3", "B(X2,v2) = 0"),
        ("X4", "X1", "e4", "B(X4,e3) = 0"),
        ("X3", "X2", "e3", "B(X3,v2) = 0"),
        ("X4", "X2", "e3", "B(X4,v2) = 0"),
        ("X1", "X2", "u2", "B(X3,u2) = 0"),
        ("X1", "X3", "u2", "B(X4,u2) = 0"),
        ("X1", "X2", "e3", "B(X3,e3) = B(X1,v2)"),
        ("X2", "X1", "e3", "B(X3,e3) = -B(X2,u2)"),
        ("X3", "X1", "e4", "B(X3,e3) = -B(X4,e4)"),
        ("X2", "X1", "e4", "B(X2,e3) = -B(X3,e4)"),
        ("X1", "X2", "e4", "B(X3,e4) = b24*B(X1,v2)"),
    ),
)

DIM8_FOLLOW_UP: typ.Final = _rows(
    INVARIANCE,
    (
        ("X2", "X3", "e4", "d24 = 0"),
        ("X2", "e4", "X2", "a24 = 0"),
        ("e4", "e4", "u2", "a33_4 = -1/2*a44_2"),
    ),
)

_SHEAR_B24: typ.Final = Shear(
    {"X2": {"X2": "1", "X3": "b24"}, "X3": {"X3": "1", "X4": "b24"}}
)

DIM8_PLAN: typ.Final = ClassificationPlan(
    dim=8,
    even=("X1", "X2", "X3", "X4"),
    odd=("e4", "e3", "u2", "v2"),
    even_brackets={("X1", "X2"): {"X3": 1}, ("X1", "X3"): {"X4": 1}},
    action={
        ("X1", "e3"): {"u2": 1},
        ("X2", "e3"): {"v2": 1},
        ("X1", "e4"): {"e3": 1},
        ("X2", "e4"): {"e3": "d24", "u2": "a24", "v2": "b24"},
        ("X3", "e4"): {"e3": "x3e4_e3", "u2": "x3e4_u2", "v2": "x3e4_v2"},
    },
    leading=("x3e4_e3", "x3e4_u2", "x3e4_v2"),
    unknown_pairs={
        ("e3", "e4"): "e3e4",
        ("u2", "e4"): "u2e4",
        ("u2", "e3"): "u2e3",
        ("v2", "e3"): "v2e3",
        ("u2", "u2"): "u2u2",
        ("u2", "v2"): "u2v2",
        ("v2", "v2"): "v2v2",
        ("v2", "e4"): "v2e4",
    },
    named_pairs={
        ("e3", "e3"): {f"X{k}": f"a33_{k}" for k in range(1, 5)},
        ("e4", "e4"): {f"X{k}": f"a44_{k}" for k in range(1, 5)},
    },
    parameters=(
        *(f"a33_{k}" for k in range(1, 5)),
        *(f"a44_{k}" for k in range(1, 5)),
        "d24",
        "a24",
        "b24",
    ),
    action_rows=DIM8_ACTION,
    jacobi_rows=DIM8_JACOBI,
    invariance_rows=DIM8_INVARIANCE,
    follow_up_rows=DIM8_FOLLOW_UP,
    scale_entry=("X3", "e3"),
    free_form_entries=(("X1", "e4"), ("X2", "e4")),
    branches=(
        BranchPlan(
            "g0_8",
            "g8:0",
            "a44_2 = 0, a44_4 = 0",
            {"a44_2": Fraction(0), "a44_4": Fraction(0), "b24": Fraction(1)},
            (_SHEAR_B24,),
        ),
        BranchPlan(
            "g1_8",
            "g8:1",
            "a44_2 = 0, a44_4 != 0",
            {"a44_2": Fraction(0), "a44_4": Fraction(4), "b24": Fraction(1)},
            (_SHEAR_B24, OddScale("a44_4")),
        ),
        BranchPlan(
            "g2_8",
            "g8:2",
            "a44_2 != 0",
            {"a44_2": Fraction(4), "a44_4": Fraction(3), "b24": Fraction(1)},
            (
                _SHEAR_B24,
                OddScale("a44_2"),
                Shear({"X2": {"X2": "1", "X4": "a44_4/a44_2"}}),
            ),
        ),
    ),
)

PLANS: typ.Final = {6: DIM6_PLAN, 8: DIM8_PLAN}


def plan_for(dim: int) -> ClassificationPlan:
    """Return the plan for ``dim``; only 6 and 8 are supported."""
    try:
        return PLANS[dim]
    except KeyError as err:
        raise UnsupportedRequestError.unsupported_dimension(dim) from err
