"""Exact arithmetic for odd-quadratic Lie superalgebras of weak filiform type."""

from __future__ import annotations

from oddquad.core import SuperAlgebra
from oddquad.errors import OddQuadError
from oddquad.forms import OddForm
from oddquad.scalar import Scalar

__all__ = ["OddForm", "OddQuadError", "Scalar", "SuperAlgebra"]
