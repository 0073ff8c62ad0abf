"""Classification of weak filiform odd-quadratic superalgebras in low dimension."""

from __future__ import annotations

from oddquad.classify.elimination import Elimination, case_split, eliminate, solve
from oddquad.classify.fingerprint import (
    Fingerprint,
    fingerprint,
    verify_witness_isomorphism,
)
from oddquad.classify.params import (
    ParamAlgebra,
    ParamForm,
    ParamRing,
    invariance_constraints,
    jacobi_constraints,
)
from oddquad.classify.pipeline import (
    ClassificationReport,
    ClassResult,
    classify_dimension,
    realize_branch,
)
from oddquad.classify.search import (
    DEFAULT_GRID,
    MAX_SEARCH_ASSIGNMENTS,
    SearchReport,
    small_search_nonexistence,
)

__all__ = [
    "DEFAULT_GRID",
    "MAX_SEARCH_ASSIGNMENTS",
    "ClassResult",
    "ClassificationReport",
    "Elimination",
    "Fingerprint",
    "ParamAlgebra",
    "ParamForm",
    "ParamRing",
    "SearchReport",
    "case_split",
    "classify_dimension",
    "eliminate",
    "fingerprint",
    "invariance_constraints",
    "jacobi_constraints",
    "realize_branch",
    "small_search_nonexistence",
    "solve",
]
