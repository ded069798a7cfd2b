"""Representation rings, characters and invariant polynomials of compact groups."""

from .finite import FiniteGroup, cyclic, dihedral, direct_product, symmetric, trivial_finite
from .core import (
    GroupDesc,
    char_inner,
    character,
    decompose,
    extension,
    finite_group,
    in_window,
    irreducibles,
    label_dim,
    label_str,
    product,
    torus,
    trivial_group,
)
from .hom import GroupHom, SubgroupInclusion, compose, identity_hom, restrict_character, trivial_inclusion
from .rep import RepRingElem, irrep, one, rep, rep_ops, rep_restrict
from .invpoly import InvBasis, InvPoly, invariant_poly_basis, localize_char, poly_restrict
from .invariants import finite_invariants

__all__ = [
    "FiniteGroup",
    "cyclic",
    "dihedral",
    "direct_product",
    "symmetric",
    "trivial_finite",
    "GroupDesc",
    "char_inner",
    "character",
    "decompose",
    "extension",
    "finite_group",
    "in_window",
    "irreducibles",
    "label_dim",
    "label_str",
    "product",
    "torus",
    "trivial_group",
    "GroupHom",
    "SubgroupInclusion",
    "compose",
    "identity_hom",
    "restrict_character",
    "trivial_inclusion",
    "RepRingElem",
    "irrep",
    "one",
    "rep",
    "rep_ops",
    "rep_restrict",
    "InvBasis",
    "InvPoly",
    "invariant_poly_basis",
    "localize_char",
    "poly_restrict",
    "finite_invariants",
    "o2",
]


def o2(name: str = "O2") -> GroupDesc:
    """The circle extended by Z_2 acting through inversion."""
    return extension(1, cyclic(2), [[[1]], [[-1]]], name=name)
