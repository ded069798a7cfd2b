"""Cochain complexes, pullbacks, long exact sequences and subdivision."""

from .complex import (
    ChainMap,
    Complex,
    GradedCohomology,
    cochain_complex,
    cocycles,
    cohomology,
    induced_rank,
    is_coboundary,
)
from .les import LESReport, les_check, relative_les
from .pullback import (
    Constraint,
    PullbackComplex,
    PullbackInputs,
    constraint_matrix,
    direct_sum,
    pullback_complex,
    relative_complex,
)
from .subdivide import Subdivision, subdivide, subdivide_space, subdivision

__all__ = [
    "ChainMap",
    "Complex",
    "GradedCohomology",
    "cochain_complex",
    "cocycles",
    "cohomology",
    "induced_rank",
    "is_coboundary",
    "LESReport",
    "les_check",
    "relative_les",
    "Constraint",
    "PullbackComplex",
    "PullbackInputs",
    "constraint_matrix",
    "direct_sum",
    "pullback_complex",
    "relative_complex",
    "Subdivision",
    "subdivide",
    "subdivide_space",
    "subdivision",
]
