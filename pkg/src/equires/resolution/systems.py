"""Borel and representation coefficient systems, and comparison maps.

Coefficients are described by :class:`Borel` (invariant polynomials of a fixed
degree ``j``) or :class:`Rep` (representation ring truncated to a weight
window ``W``).  Both turn a group homomorphism ``phi: K -> K'`` into the
pullback matrix ``phi^*: fiber(K') -> fiber(K)``; transports and comparison
maps are built from these matrices only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import ChainMapError, WindowError
from ..groups import GroupDesc, GroupHom, invariant_poly_basis, irreducibles, label_str
from ..groups.hom import restrict_label
from ..groups.invpoly import poly_str, poly_substitute
from ..linalg import Matrix
from .cells import CellComplex, LocalSystem
from .space import Face, ResolutionSpace

__all__ = ["Borel", "Rep", "borel_system", "rep_system", "local_system", "ComparisonMap", "comparison_map"]


@dataclass(frozen=True)
class Borel:
    j: int

    def dim(self, g: GroupDesc) -> int:
        return len(invariant_poly_basis(g, self.j))

    def basis_names(self, g: GroupDesc) -> tuple:
        return tuple(poly_str(p) for p in invariant_poly_basis(g, self.j).polys)

    def pullback(self, hom: GroupHom) -> Matrix:
        return _borel_pullback(hom, self.j)

    @property
    def tag(self):
        return ("borel", self.j)


@dataclass(frozen=True)
class Rep:
    W: int

    def labels(self, g: GroupDesc) -> list:
        return [lab for lab, _ in irreducibles(g, self.W)]

    def dim(self, g: GroupDesc) -> int:
        return len(self.labels(g))

    def basis_names(self, g: GroupDesc) -> tuple:
        return tuple(label_str(g, lab) for lab in self.labels(g))

    def pullback(self, hom: GroupHom) -> Matrix:
        return _rep_pullback(hom, self.W)

    @property
    def tag(self):
        return ("rep", self.W)


@lru_cache(maxsize=None)
def _borel_pullback(hom: GroupHom, j: int) -> Matrix:
    src = invariant_poly_basis(hom.source, j)
    tgt = invariant_poly_basis(hom.target, j)
    cols = []
    for p in tgt.polys:
        q = poly_substitute(p, hom.lie_matrix, hom.source.rank)
        cols.append({i: v for i, v in enumerate(src.coords(q)) if v})
    return Matrix.from_columns(cols, len(src))


@lru_cache(maxsize=None)
def _rep_pullback(hom: GroupHom, W: int) -> Matrix:
    src_labels = [lab for lab, _ in irreducibles(hom.source, W)]
    pos = {lab: i for i, lab in enumerate(src_labels)}
    cols = []
    for lab, _ in irreducibles(hom.target, W):
        col = {}
        for l2, m in restrict_label(hom, lab):
            if l2 not in pos:
                raise WindowError(
                        f"restriction along {hom.name or hom!r} sends {label_str(hom.target, lab)} "
                    f"outside the window W={W} of {hom.source.name}"
                )
            col[pos[l2]] = Fraction(m)
        cols.append(col)
    return Matrix.from_columns(cols, len(src_labels))


def _transport(coeff, autos) -> Matrix:
    m = None
    for a in autos:
        p = coeff.pullback(a)
        m = p if m is None else p @ m
    return m


def local_system(s: ResolutionSpace, piece: str, coeff) -> LocalSystem:
    p = s.piece(piece)
    r = coeff.dim(p.group)
    tr = []
    for key, autos in p.twists:
        if autos:
            tr.append((key, _transport(coeff, autos)))
    return LocalSystem(p.complex, r, tuple(sorted(tr, key=lambda kv: kv[0])), (coeff.tag[0], p.group.name, coeff.tag[1]), coeff.basis_names(p.group))


def borel_system(s: ResolutionSpace, stratum: str, j: int) -> LocalSystem:
    if j < 0:
        raise ValueError("degree j must be non-negative")
    return local_system(s, stratum, Borel(j))


def rep_system(s: ResolutionSpace, stratum: str, W: int) -> LocalSystem:
    if W < 0:
        raise ValueError("window W must be non-negative")
    return local_system(s, stratum, Rep(W))


@dataclass(frozen=True)
class ComparisonMap:
    """``psi^#``: cochains of the target piece to cochains on the face."""

    face: Face
    fiber_map: Matrix  # fiber(target group) -> fiber(source group)
    face_system: LocalSystem  # source system restricted to the face cells
    target_system: LocalSystem

    def matrix(self, q: int) -> Matrix:
        fc, tc = self.face_system.base, self.target_system.base
        rs, rt = self.face_system.rank, self.target_system.rank
        R = self.fiber_map
        rows: dict = {}
        for i, c in enumerate(fc.cells_of_dim(q)):
            img, sign = self.face.map[c]
            if tc.dims[img] != q:
                continue
            j = tc.index(img)
            for a, row in R.rows.items():
                tgt = rows.setdefault(i * rs + a, {})
                for b, v in row.items():
                    tgt[j * rt + b] = sign * v
        return Matrix(len(fc.cells_of_dim(q)) * rs, len(tc.cells_of_dim(q)) * rt, rows)

    def restriction(self, q: int, source_complex: CellComplex) -> Matrix:
        """``i^*``: cochains of the source piece to cochains on the face."""
        fc = self.face_system.base
        r = self.face_system.rank
        rows = {}
        for i, c in enumerate(fc.cells_of_dim(q)):
            j = source_complex.index(c)
            for a in range(r):
                rows[i * r + a] = {j * r + a: 1}
        return Matrix(len(fc.cells_of_dim(q)) * r, len(source_complex.cells_of_dim(q)) * r, rows)

    def chain_map_issues(self) -> list:
        out = []
        top = max(self.face_system.base.dimension, self.target_system.base.dimension)
        for q in range(top):
            lhs = self.matrix(q + 1) @ self.target_system.coboundary(q)
            rhs = self.face_system.coboundary(q) @ self.matrix(q)
            if lhs != rhs:
                diff = lhs - rhs
                i = next(iter(sorted(diff.rows)))
                cell = self.face_system.base.cells_of_dim(q + 1)[i // max(self.face_system.rank, 1)]
                out.append(
                    (
                        "comparison-not-chain-map",
                        f"face {self.face.name}: pullback does not commute with the differential in degree {q} at {cell}",
                        (cell,),
                    )
                )
        return out

    def check(self):
        issues = self.chain_map_issues()
        if issues:
            raise ChainMapError(issues[0][1], degree=None)


def comparison_map(s: ResolutionSpace, face, coeff) -> ComparisonMap:
    f = face if isinstance(face, Face) else s.face(face)
    src = local_system(s, f.source, coeff)
    tgt = local_system(s, f.target, coeff)
    sub = s.piece(f.source).complex.subcomplex(f.cells, name=f.name)
    return ComparisonMap(f, coeff.pullback(f.hom), src.restrict(sub), tgt)
