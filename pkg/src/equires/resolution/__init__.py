"""Quotient-side resolution structures, coefficient systems and validators."""

from .cells import CellComplex, LocalSystem, circle, interval, point, polygon, trivial_system, twisted_system
from .space import Face, Piece, ResolutionSpace
from .systems import Borel, ComparisonMap, Rep, borel_system, comparison_map, local_system, rep_system
from .validate import Issue, ValidationReport, validate_resolution
from .builders import (
    BUILDERS,
    appendix_sphere,
    appendix_sphere_z2,
    build_cp2_torus,
    build_free_action,
    build_mobius_example,
    build_sphere_rotation,
    build_trivial_action,
    negation,
)

__all__ = [
    "CellComplex",
    "LocalSystem",
    "circle",
    "interval",
    "point",
    "polygon",
    "trivial_system",
    "twisted_system",
    "Face",
    "Piece",
    "ResolutionSpace",
    "Borel",
    "ComparisonMap",
    "Rep",
    "borel_system",
    "comparison_map",
    "local_system",
    "rep_system",
    "Issue",
    "ValidationReport",
    "validate_resolution",
    "BUILDERS",
    "appendix_sphere",
    "appendix_sphere_z2",
    "build_cp2_torus",
    "build_free_action",
    "build_mobius_example",
    "build_sphere_rotation",
    "build_trivial_action",
    "negation",
]
