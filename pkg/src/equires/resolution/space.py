"""Quotient-side resolution structures.

A :class:`ResolutionSpace` is a set of *pieces*: the quotient ``Z`` of the
resolved space (``top``) and one piece per isotropy stratum, each a cell
complex carrying its isotropy group.  *Faces* record boundary fibrations: a
closed subcomplex of a source piece together with a cellular map onto a
target piece and the inclusion of isotropy groups.  Faces between strata
encode the compatibility triangles of iterated boundary fibrations, so the
data is recursive rather than a star around ``top``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..groups import GroupDesc, GroupHom
from .cells import CellComplex

__all__ = ["Piece", "Face", "ResolutionSpace"]


@dataclass(frozen=True)
class Piece:
    name: str
    complex: CellComplex
    group: GroupDesc
    # ((cell, entry index), (automorphism, ...)): the transport along that
    # entry is the pullback through the listed automorphisms, first one first
    twists: tuple = ()

    @cached_property
    def twist_map(self) -> dict:
        return dict(self.twists)


@dataclass(frozen=True)
class Face:
    name: str
    source: str
    target: str
    cells: tuple
    cell_map: tuple  # ((cell, image, sign), ...)
    hom: GroupHom  # isotropy of the source piece into that of the target

    @cached_property
    def map(self) -> dict:
        return {c: (img, s) for c, img, s in self.cell_map}


@dataclass(frozen=True)
class ResolutionSpace:
    name: str
    top: str
    pieces: tuple
    faces: tuple = ()
    acting_group: GroupDesc | None = None
    fixed_points: tuple = ()  # ((piece, weight), ...) for circle-type localization

    @cached_property
    def piece_map(self) -> dict:
        return {p.name: p for p in self.pieces}

    def piece(self, name: str) -> Piece:
        try:
            return self.piece_map[name]
        except KeyError:
            raise KeyError(f"no piece named {name!r}") from None

    def face(self, name: str) -> Face:
        for f in self.faces:
            if f.name == name:
                return f
        raise KeyError(f"no face named {name!r}")

    @property
    def total(self) -> CellComplex:
        return self.piece(self.top).complex

    @property
    def strata(self) -> list:
        return [p.name for p in self.pieces if p.name != self.top]

    @property
    def names(self) -> list:
        return [p.name for p in self.pieces]

    def faces_from(self, piece: str) -> list:
        return [f for f in self.faces if f.source == piece]

    @cached_property
    def order(self) -> frozenset:
        """Strict order: ``(a, b)`` when a chain of faces leads from a to b.

        Deeper strata (larger isotropy) are larger.
        """
        succ: dict = {}
        for f in self.faces:
            succ.setdefault(f.source, set()).add(f.target)
        out = set()
        for a in self.names:
            stack, seen = list(succ.get(a, ())), set()
            while stack:
                b = stack.pop()
                if b in seen:
                    continue
                seen.add(b)
                out.add((a, b))
                stack.extend(succ.get(b, ()))
        return frozenset(out)

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.order

    def is_acyclic(self) -> bool:
        return not any((a, a) in self.order for a in self.names)

    def upward_closed(self, B) -> bool:
        B = set(B)
        return all(b2 in B for b in B for (a, b2) in self.order if a == b)

    def all_contractible(self) -> bool:
        return all(p.complex.components_acyclic() for p in self.pieces)

    def homs(self) -> list:
        """Every named homomorphism referenced by faces and twists, in first-use order."""
        out, seen = [], set()
        for f in self.faces:
            if f.hom.name not in seen:
                seen.add(f.hom.name)
                out.append(f.hom)
        for p in self.pieces:
            for _, autos in p.twists:
                for a in autos:
                    if a.name not in seen:
                        seen.add(a.name)
                        out.append(a)
        return out

    def groups(self) -> list:
        out, seen = [], set()
        cand = [self.acting_group] if self.acting_group is not None else []
        cand += [p.group for p in self.pieces]
        for g in cand:
            if g.name not in seen:
                seen.add(g.name)
                out.append(g)
        return out

    def __repr__(self):
        return f"ResolutionSpace({self.name}, pieces={self.names})"
