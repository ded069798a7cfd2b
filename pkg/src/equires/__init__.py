"""Exact equivariant cohomology, delocalized cohomology and K-theory of resolved compact group actions."""

from . import groups, resolution, cochain, theories  # noqa: F401  (import order matters)
from .resolution import BUILDERS, ResolutionSpace, validate_resolution
from .theories import (
    ab_pushforward,
    chern_character,
    chern_triangle_check,
    delocalized_cohomology,
    equivariant_cohomology,
    k_theory,
    localization_map,
)

__version__ = "0.1.0"

__all__ = [
    "groups",
    "resolution",
    "cochain",
    "theories",
    "BUILDERS",
    "ResolutionSpace",
    "validate_resolution",
    "ab_pushforward",
    "chern_character",
    "chern_triangle_check",
    "delocalized_cohomology",
    "equivariant_cohomology",
    "k_theory",
    "localization_map",
]
