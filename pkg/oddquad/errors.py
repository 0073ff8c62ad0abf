"""Exception hierarchy shared by every oddquad module."""

from __future__ import annotations


class OddQuadError(ValueError):
    """Base class for all precondition failures raised by oddquad."""


class ScalarError(OddQuadError):
    """An exact scalar operation cannot be carried out."""

    @classmethod
    def division_by_zero(cls) -> ScalarError:
        """Build an error for a division by an exact zero."""
        message = "division by zero"
        return cls(message)

    @classmethod
    def square_radicand(cls, radicand: int) -> ScalarError:
        """Build an error for a radicand that is a perfect square."""
        message = f"radicand {radicand} is a perfect square; use a rational instead"
        return cls(message)

    @classmethod
    def not_square_free(cls, radicand: int) -> ScalarError:
        """Build an error for a radicand with a repeated prime factor."""
        message = f"radicand {radicand} is not square-free"
        return cls(message)

    @classmethod
    def zero_radicand(cls) -> ScalarError:
        """Build an error for a square root of zero written as a radical."""
        message = "radicand must be non-zero"
        return cls(message)

    @classmethod
    def unparsable(cls, text: str) -> ScalarError:
        """Build an error for scalar text that is not a rational."""
        message = f"cannot parse scalar {text!r}"
        return cls(message)


class MixedRadicandError(ScalarError):
    """Two quadratic scalars live in different extensions of the rationals."""

    @classmethod
    def between(cls, left: int, right: int) -> MixedRadicandError:
        """Build an error naming both radicands."""
        message = f"cannot combine sqrt({left}) with sqrt({right})"
        return cls(message)


class DimensionError(OddQuadError):
    """Vectors or matrices have incompatible shapes."""

    @classmethod
    def mismatch(cls, what: str, expected: int, actual: int) -> DimensionError:
        """Build an error for a length mismatch."""
        message = f"{what}: expected dimension {expected}, got {actual}"
        return cls(message)


class GradingError(OddQuadError):
    """A bracket or form entry violates the Z2 grading."""

    @classmethod
    def bracket_parity(cls, left: str, right: str, target: str) -> GradingError:
        """Build an error for a bracket landing in the wrong parity."""
        message = f"[{left}, {right}] has a component on {target} of the wrong parity"
        return cls(message)

    @classmethod
    def duplicate_name(cls, name: str) -> GradingError:
        """Build an error for a basis name used twice."""
        message = f"basis name {name!r} is used more than once"
        return cls(message)

    @classmethod
    def unknown_name(cls, name: str) -> GradingError:
        """Build an error for a name that is not a basis vector."""
        message = f"unknown basis vector {name!r}"
        return cls(message)

    @classmethod
    def form_entry(cls, left: str, right: str) -> GradingError:
        """Build an error for a form entry between vectors of equal parity."""
        message = f"odd form entry B({left}, {right}) must pair even with odd"
        return cls(message)

    @classmethod
    def conflicting_bracket(cls, left: str, right: str) -> GradingError:
        """Build an error for a bracket given twice with different values."""
        message = f"[{left}, {right}] is given twice with different values"
        return cls(message)

    @classmethod
    def inhomogeneous(cls, what: str) -> GradingError:
        """Build an error for a vector required to be homogeneous."""
        message = f"{what} must be homogeneous"
        return cls(message)


class BasisChangeError(OddQuadError):
    """A change-of-basis matrix is not admissible."""

    @classmethod
    def singular(cls) -> BasisChangeError:
        """Build an error for a non-invertible matrix."""
        message = "change-of-basis matrix is singular"
        return cls(message)

    @classmethod
    def mixes_parity(cls, row: int, column: int) -> BasisChangeError:
        """Build an error for an entry linking an even and an odd coordinate."""
        message = f"change-of-basis entry ({row}, {column}) mixes even and odd"
        return cls(message)


class FormError(OddQuadError):
    """An odd bilinear form does not meet a requirement."""

    @classmethod
    def shape(cls, n_even: int, m_odd: int) -> FormError:
        """Build an error for a pairing matrix with the wrong shape."""
        message = f"pairing matrix must be {n_even}x{m_odd}"
        return cls(message)

    @classmethod
    def degenerate(cls, context: str) -> FormError:
        """Build an error for a degenerate form where one is forbidden."""
        message = f"{context}: form is degenerate"
        return cls(message)

    @classmethod
    def not_odd_quadratic(cls, context: str) -> FormError:
        """Build an error for a pair that is not odd-quadratic."""
        message = f"{context}: algebra and form are not odd-quadratic"
        return cls(message)


class FlagError(OddQuadError):
    """A weak filiform flag is missing or inconsistent."""

    @classmethod
    def not_weak_filiform(cls, chain: tuple[int, ...]) -> FlagError:
        """Build an error for an odd part that is not weak filiform."""
        message = f"odd part is not weak filiform (bracket chain dims {list(chain)})"
        return cls(message)

    @classmethod
    def too_short(cls, length: int, required: int) -> FlagError:
        """Build an error for a flag below the required length."""
        message = f"flag length {length} is below the required {required}"
        return cls(message)


class ExtensionError(OddQuadError):
    """Extension data or a decomposition precondition is invalid."""

    @classmethod
    def invalid_data(cls, failures: list[str]) -> ExtensionError:
        """Build an error listing the failed extension-data checks."""
        message = "invalid extension data: " + "; ".join(failures)
        return cls(message)

    @classmethod
    def center_not_line(cls, even_dim: int) -> ExtensionError:
        """Build an error for an even center that is not one-dimensional."""
        message = f"even part of the center has dimension {even_dim}, expected 1"
        return cls(message)

    @classmethod
    def orthogonal_pairing(cls) -> ExtensionError:
        """Build an error for a central vector orthogonal to e_m."""
        message = "central even vector is orthogonal to e_m"
        return cls(message)

    @classmethod
    def action_size(cls, maps: int, dim: int) -> ExtensionError:
        """Build an error for a derivation list that does not match ``h``."""
        message = f"psi has {maps} maps but h has dimension {dim}"
        return cls(message)

    @classmethod
    def not_graded_derivation(cls, name: str) -> ExtensionError:
        """Build an error for a map that is not a B-skew graded derivation."""
        message = f"psi({name}) is not a B-skew graded derivation"
        return cls(message)

    @classmethod
    def not_morphism(cls, left: str, right: str) -> ExtensionError:
        """Build an error for psi failing to preserve a bracket."""
        message = f"psi does not preserve the bracket [{left}, {right}]"
        return cls(message)

    @classmethod
    def gamma_not_invariant(cls) -> ExtensionError:
        """Build an error for a gamma that is not invariant on h."""
        message = "gamma is not an invariant odd form on h"
        return cls(message)


class ExtensionFault(OddQuadError):
    """A construction produced a result that fails its own checks."""

    @classmethod
    def failed(cls, construction: str, check: str) -> ExtensionFault:
        """Build an error for a construction output failing a check."""
        message = f"{construction}: output fails {check}"
        return cls(message)


class ClassificationError(OddQuadError):
    """The classification pipeline cannot proceed."""

    @classmethod
    def irreducible_residual(cls, residual: str) -> ClassificationError:
        """Build an error for a residual that cannot be split or solved."""
        message = f"cannot split residual {residual}"
        return cls(message)

    @classmethod
    def not_constant(cls, name: str) -> ClassificationError:
        """Build an error for specialising with a free parameter left."""
        message = f"coefficient {name} still depends on free parameters"
        return cls(message)

    @classmethod
    def no_match(cls, branch: str) -> ClassificationError:
        """Build an error for a branch whose normal form misses the catalog."""
        message = f"branch {branch} does not normalise onto its catalog entry"
        return cls(message)

    @classmethod
    def failed_check(cls, label: str, check: str) -> ClassificationError:
        """Build an error for an emitted class failing re-verification."""
        message = f"class {label} fails {check}"
        return cls(message)

    @classmethod
    def false_consequence(cls, row: str, claims: str) -> ClassificationError:
        """Build an error for a table row whose stated consequence does not hold."""
        message = f"{row} does not establish {claims}"
        return cls(message)


class UnsupportedRequestError(ClassificationError):
    """A classification or search request lies outside what is supported."""

    @classmethod
    def unsupported_dimension(cls, dim: int) -> UnsupportedRequestError:
        """Build an error for a dimension without a pipeline."""
        message = f"no classification pipeline for dimension {dim}"
        return cls(message)

    @classmethod
    def search_too_large(cls, count: int, limit: int) -> UnsupportedRequestError:
        """Build an error for a search grid exceeding the assignment limit."""
        message = f"search would examine {count} assignments; limit is {limit}"
        return cls(message)

    @classmethod
    def unsupported_search(cls, n_even: int) -> UnsupportedRequestError:
        """Build an error for a search shape without an even-part ansatz."""
        message = f"no search ansatz for an even part of dimension {n_even}"
        return cls(message)

    @classmethod
    def grid_missing(cls, values: str) -> UnsupportedRequestError:
        """Build an error for a search grid lacking -1, 0 or 1."""
        message = f"search grid must contain -1, 0 and 1; got {values}"
        return cls(message)


class EmptyBranchError(ClassificationError):
    """The constraint system of a branch has no solutions."""

    @classmethod
    def constant_residual(cls, residual: str) -> EmptyBranchError:
        """Build an error for a non-zero constant left after elimination."""
        message = f"empty variety branch: residual {residual} is a non-zero constant"
        return cls(message)

    @classmethod
    def vanishing_factor(cls, factor: str) -> EmptyBranchError:
        """Build an error for a factor assumed non-zero that became zero."""
        message = f"empty variety branch: non-zero factor {factor} vanishes"
        return cls(message)


class SchemaError(OddQuadError):
    """An input document does not match the interchange schema."""

    @classmethod
    def decode(cls, source: str, error: Exception) -> SchemaError:
        """Build an error wrapping a decoder failure."""
        message = f"{source}: {error}"
        return cls(message)

    @classmethod
    def unreadable(cls, source: str, error: OSError) -> SchemaError:
        """Build an error for an input file that could not be read."""
        message = f"could not read {source}: {error}"
        return cls(message)

    @classmethod
    def catalog_key(cls, key: str) -> SchemaError:
        """Build an error for an unknown catalog key."""
        message = f"unknown catalog key {key!r}"
        return cls(message)

    @classmethod
    def missing_form(cls, source: str) -> SchemaError:
        """Build an error for a document without the form a verb needs."""
        message = f"{source}: document carries no form"
        return cls(message)
