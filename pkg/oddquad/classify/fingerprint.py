"""Isomorphism invariants used to tell classes apart."""

from __future__ import annotations

import dataclasses
import typing as typ

from oddquad import core, flags
from oddquad.linalg import Subspace

if typ.TYPE_CHECKING:
    from oddquad.core import SuperAlgebra
    from oddquad.linalg import Matrix


@dataclasses.dataclass(frozen=True, slots=True)
class Fingerprint:
    """
    Dimensions and ranks of canonically attached spaces.

    Attributes
    ----------
    center_dim, center_even, center_odd : int
        Dimension of the center and of its graded parts.
    series : tuple[int, ...]
        Lower central series dimensions of the whole algebra.
    even_series : tuple[int, ...]
        Lower central series dimensions of the even Lie algebra.
    odd_square_rank : int
        Rank of the odd-odd bracket ``S^2(g1) -> g0``.
    chain : tuple[int, ...]
        Dimensions of the bracket chain on the odd part.
    """

    center_dim: int
    center_even: int
    center_odd: int
    series: tuple[int, ...]
    even_series: tuple[int, ...]
    odd_square_rank: int
    chain: tuple[int, ...]


def odd_square_rank(alg: SuperAlgebra) -> int:
    """Return ``dim [g1, g1]``."""
    odd = range(alg.n_even, alg.dim)
    products = (
        core.to_dense(alg.basis_bracket(i, j), alg.dim)
        for i in odd
        for j in odd
        if i <= j
    )
    return Subspace.span(products, alg.dim).dim


def fingerprint(alg: SuperAlgebra) -> Fingerprint:
    """Return the fingerprint of ``alg``."""
    center = core.center(alg)
    even, odd = core.graded_dims(alg, center)
    return Fingerprint(
        center_dim=center.dim,
        center_even=even,
        center_odd=odd,
        series=tuple(space.dim for space in core.lower_central_series(alg)),
        even_series=tuple(
            space.dim for space in core.lower_central_series(alg, restrict_to_even=True)
        ),
        odd_square_rank=odd_square_rank(alg),
        chain=tuple(flags.bracket_chain_dims(alg)),
    )


def verify_witness_isomorphism(
    source: SuperAlgebra, target: SuperAlgebra, transform: Matrix
) -> bool:
    """
    Return whether ``transform`` carries ``source`` onto ``target`` exactly.

    Raises
    ------
    BasisChangeError
        If ``transform`` mixes parities or is singular.
    """
    return core.change_basis(source, transform).same_constants(target)
