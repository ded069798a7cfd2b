"""Equivariant cohomology, delocalized cohomology, K-theory and the maps between them."""

from .assemble import assemble, reduced_complex, require_valid
from .compute import K_SCOPE_MESSAGE, delocalized_cohomology, equivariant_cohomology, k_scope, k_theory
from .maps import (
    ab_pushforward,
    chern_character,
    chern_rank,
    chern_triangle_check,
    fixed_point_classes,
    localization_map,
    localization_matrix,
)
from .result import DLClass, KClass, TheoryResult, TriangleReport

__all__ = [
    "assemble",
    "reduced_complex",
    "require_valid",
    "K_SCOPE_MESSAGE",
    "delocalized_cohomology",
    "equivariant_cohomology",
    "k_scope",
    "k_theory",
    "ab_pushforward",
    "chern_character",
    "chern_rank",
    "chern_triangle_check",
    "fixed_point_classes",
    "localization_map",
    "localization_matrix",
    "DLClass",
    "KClass",
    "TheoryResult",
    "TriangleReport",
]
