"""
Exact scalars: rationals and elements of a single quadratic extension.

A :class:`Scalar` is ``base + radical_coefficient * sqrt(radicand)`` with
rational parts and a square-free integer radicand. Rationals carry radicand
``0`` and combine freely with any extension; two scalars with different
non-zero radicands cannot be combined and raise
:class:`~oddquad.errors.MixedRadicandError`.

Usage
-----
>>> from oddquad.scalar import Scalar, adjoin_sqrt
>>> root2 = adjoin_sqrt(2).root
>>> str(root2 * root2)
'2'
"""

from __future__ import annotations

import dataclasses
import functools
import typing as typ
from fractions import Fraction

import sympy

from oddquad.errors import MixedRadicandError, ScalarError

type ScalarLike = Scalar | Fraction | int

_MINUS_SIGN = "−"


@functools.lru_cache(maxsize=256)
def square_free_decomposition(value: int) -> tuple[int, int]:
    """
    Split a non-zero integer as ``k**2 * s`` with ``s`` square-free.

    Parameters
    ----------
    value : int
        Non-zero integer to decompose. The sign is carried by ``s``.

    Returns
    -------
    tuple[int, int]
        ``(k, s)`` with ``k > 0`` and ``value == k * k * s``.
    """
    if value == 0:
        raise ScalarError.division_by_zero()
    square_root_part = 1
    square_free = -1 if value < 0 else 1
    for prime, exponent in sympy.factorint(abs(value)).items():
        square_root_part *= prime ** (exponent // 2)
        square_free *= prime ** (exponent % 2)
    return square_root_part, square_free


def _validate_radicand(radicand: int) -> None:
    root, square_free = square_free_decomposition(radicand)
    if square_free == 1:
        raise ScalarError.square_radicand(radicand)
    if root != 1:
        raise ScalarError.not_square_free(radicand)


@dataclasses.dataclass(frozen=True, slots=True, eq=False)
class Scalar:
    """An element of Q or of Q(sqrt(radicand))."""

    base: Fraction = Fraction(0)
    radical_coefficient: Fraction = Fraction(0)
    radicand: int = 0

    def __post_init__(self) -> None:
        """Normalise the parts and validate the radicand."""
        object.__setattr__(self, "base", Fraction(self.base))
        coefficient = Fraction(self.radical_coefficient)
        object.__setattr__(self, "radical_coefficient", coefficient)
        if coefficient == 0:
            object.__setattr__(self, "radicand", 0)
        else:
            _validate_radicand(self.radicand)

    @classmethod
    def of(cls, value: ScalarLike) -> Scalar:
        """Coerce an int, Fraction or Scalar into a Scalar."""
        if isinstance(value, Scalar):
            return value
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"p/q"`` text, accepting both ASCII and Unicode minus."""
        cleaned = text.strip().replace(_MINUS_SIGN, "-")
        try:
            return cls(Fraction(cleaned))
        except (ValueError, ZeroDivisionError) as err:
            raise ScalarError.unparsable(text) from err

    @property
    def is_zero(self) -> bool:
        """Return whether the scalar is exactly zero."""
        return self.base == 0 and self.radical_coefficient == 0

    @property
    def is_rational(self) -> bool:
        """Return whether the scalar has no radical part."""
        return self.radicand == 0

    def conjugate(self) -> Scalar:
        """Return the Galois conjugate ``base - coefficient * sqrt(d)``."""
        return Scalar(self.base, -self.radical_coefficient, self.radicand)

    def norm(self) -> Fraction:
        """Return the field norm, the product with the conjugate."""
        return self.base**2 - self.radical_coefficient**2 * self.radicand

    def _context(self, other: Scalar) -> int:
        if self.radicand == 0:
            return other.radicand
        if other.radicand in {0, self.radicand}:
            return self.radicand
        raise MixedRadicandError.between(self.radicand, other.radicand)

    def __add__(self, other: ScalarLike) -> Scalar:
        """Add exactly."""
        right = Scalar.of(other)
        radicand = self._context(right)
        return Scalar(
            self.base + right.base,
            self.radical_coefficient + right.radical_coefficient,
            radicand,
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        """Negate."""
        return Scalar(-self.base, -self.radical_coefficient, self.radicand)

    def __sub__(self, other: ScalarLike) -> Scalar:
        """Subtract exactly."""
        return self + (-Scalar.of(other))

    def __rsub__(self, other: ScalarLike) -> Scalar:
        """Subtract from a plain number."""
        return Scalar.of(other) + (-self)

    def __mul__(self, other: ScalarLike) -> Scalar:
        """Multiply exactly."""
        right = Scalar.of(other)
        radicand = self._context(right)
        base = self.base * right.base
        base += self.radical_coefficient * right.radical_coefficient * radicand
        coefficient = (
            self.base * right.radical_coefficient
            + self.radical_coefficient * right.base
        )
        return Scalar(base, coefficient, radicand)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        """Return the multiplicative inverse via the conjugate."""
        if self.is_zero:
            raise ScalarError.division_by_zero()
        norm = self.norm()
        conjugate = self.conjugate()
        return Scalar(
            conjugate.base / norm, conjugate.radical_coefficient / norm, self.radicand
        )

    def __truediv__(self, other: ScalarLike) -> Scalar:
        """Divide exactly; dividing by zero raises ScalarError."""
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        """Divide a plain number by this scalar."""
        return Scalar.of(other) * self.inverse()

    def __eq__(self, other: object) -> bool:
        """Compare exactly; ints and Fractions compare as rationals."""
        if isinstance(other, int | Fraction):
            other = Scalar(Fraction(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return (
            self.base == other.base
            and self.radical_coefficient == other.radical_coefficient
            and self.radicand == other.radicand
        )

    def __hash__(self) -> int:
        """Hash consistently with Fraction for rationals."""
        if self.radicand == 0:
            return hash(self.base)
        return hash((self.base, self.radical_coefficient, self.radicand))

    def __str__(self) -> str:
        """Render as ``p/q`` or ``a + b*sqrt(d)``."""
        if self.radicand == 0:
            return str(self.base)
        radical = f"{abs(self.radical_coefficient)}*sqrt({self.radicand})"
        if self.base == 0:
            return radical if self.radical_coefficient > 0 else f"-{radical}"
        sign = "+" if self.radical_coefficient > 0 else "-"
        return f"{self.base} {sign} {radical}"

    def __repr__(self) -> str:
        """Return a compact debugging form."""
        return f"Scalar({self})"


ZERO: typ.Final = Scalar()
ONE: typ.Final = Scalar(Fraction(1))


def add(a: ScalarLike, b: ScalarLike) -> Scalar:
    """Return ``a + b``."""
    return Scalar.of(a) + b


def sub(a: ScalarLike, b: ScalarLike) -> Scalar:
    """Return ``a - b``."""
    return Scalar.of(a) - b


def mul(a: ScalarLike, b: ScalarLike) -> Scalar:
    """Return ``a * b``."""
    return Scalar.of(a) * b


def div(a: ScalarLike, b: ScalarLike) -> Scalar:
    """Return ``a / b``; raises ScalarError when ``b`` is zero."""
    return Scalar.of(a) / b


def neg(a: ScalarLike) -> Scalar:
    """Return ``-a``."""
    return -Scalar.of(a)


def is_zero(a: ScalarLike) -> bool:
    """Return whether ``a`` is exactly zero."""
    return Scalar.of(a).is_zero


@dataclasses.dataclass(frozen=True, slots=True)
class FieldContext:
    """The smallest field holding a square root of a given rational."""

    radicand: int
    root: Scalar

    @property
    def is_rational(self) -> bool:
        """Return whether the square root is already rational."""
        return self.radicand == 0


def adjoin_sqrt(value: Fraction | int) -> FieldContext:
    """
    Return a field context holding an exact square root of ``value``.

    Writes ``value = (k / v)**2 * s`` with ``s`` square-free, so the root is
    ``(k / v) * sqrt(s)``; a perfect square yields a rational context.

    Parameters
    ----------
    value : Fraction | int
        Non-zero rational whose square root is needed.

    Returns
    -------
    FieldContext
        Radicand ``s`` (``0`` when the root is rational) and the root.
    """
    rational = Fraction(value)
    if rational == 0:
        raise ScalarError.division_by_zero()
    numerator = rational.numerator * rational.denominator
    root_part, square_free = square_free_decomposition(numerator)
    scale = Fraction(root_part, rational.denominator)
    if square_free == 1:
        return FieldContext(0, Scalar(scale))
    return FieldContext(square_free, Scalar(Fraction(0), scale, square_free))
