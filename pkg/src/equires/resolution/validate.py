"""Validation of resolution structures.

Every problem becomes a report entry naming the cells involved; nothing here
raises on bad input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import EquiresError, WindowError
from ..groups import GroupHom, compose
from .space import ResolutionSpace
from .systems import Borel, Rep, comparison_map, local_system

__all__ = ["Issue", "ValidationReport", "validate_resolution"]

# coefficient systems on which flatness and chain-map conditions are spot-checked
CHECK_COEFFS = (Borel(0), Borel(1), Borel(2), Rep(1))


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    cells: tuple = ()
    where: str = ""

    def __str__(self):
        loc = f"[{self.where}] " if self.where else ""
        cells = f" (cells: {', '.join(self.cells)})" if self.cells else ""
        return f"{self.code}: {loc}{self.message}{cells}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple = ()
    notes: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.ok

    def codes(self) -> set:
        return {i.code for i in self.issues}

    def cells(self) -> set:
        return {c for i in self.issues for c in i.cells}

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(str(i) for i in self.issues)


def _same_hom(a: GroupHom, b: GroupHom) -> bool:
    return (a.source, a.target, a.lie_matrix, a.finite_map) == (b.source, b.target, b.lie_matrix, b.finite_map)


def validate_resolution(s: ResolutionSpace) -> ValidationReport:
    issues: list = []
    notes: list = []

    def add(code, msg, cells=(), where=""):
        issues.append(Issue(code, msg, tuple(str(c) for c in cells), where))

    names = [p.name for p in s.pieces]
    if len(set(names)) != len(names):
        add("duplicate-piece", "piece names are not unique")
    if s.top not in s.piece_map:
        add("missing-top", f"top piece {s.top!r} does not exist")
        return ValidationReport(tuple(issues))

    # cell complexes ---------------------------------------------------------
    for p in s.pieces:
        for code, msg, cells in p.complex.structure_issues():
            add(code, msg, cells, p.name)
        for (cell, idx), autos in p.twists:
            if cell not in p.complex or idx >= len(p.complex.entries(cell)):
                add("bad-twist", f"no boundary entry {idx} on cell {cell}", (cell,), p.name)
            for a in autos:
                if a.source != p.group or a.target != p.group:
                    add("bad-twist", f"{a.name} is not an automorphism of {p.group.name}", (cell,), p.name)
    if issues:
        return ValidationReport(tuple(issues))

    # flatness of the coefficient systems ------------------------------------------
    for p in s.pieces:
        for coeff in CHECK_COEFFS:
            try:
                L = local_system(s, p.name, coeff)
            except WindowError as e:
                notes.append(f"{p.name}: {coeff.tag} skipped ({e})")
                continue
            except EquiresError as e:
                add("bad-coefficients", str(e), (), p.name)
                continue
            for code, msg, cells in L.flatness_issues():
                add(code, f"{msg} ({coeff.tag[0]} {coeff.tag[1]})", cells, p.name)

    # faces ---------------------------------------------------------------------------
    face_ok = {}
    for f in s.faces:
        ok = True
        if f.source not in s.piece_map or f.target not in s.piece_map:
            add("dangling-face", f"face {f.name} joins unknown pieces {f.source}->{f.target}", (), f.name)
            face_ok[f.name] = False
            continue
        src, tgt = s.piece(f.source), s.piece(f.target)
        sc, tc = src.complex, tgt.complex
        cells = set(f.cells)
        unknown = [c for c in f.cells if c not in sc]
        if unknown:
            add("dangling-cell", f"face {f.name} lists cells missing from {f.source}", unknown, f.name)
            face_ok[f.name] = False
            continue
        if not sc.is_closed(cells):
            miss = sorted({g for c in cells for g, _ in sc.entries(c) if g not in cells})
            add("not-subcomplex", f"face {f.name} is not closed under faces", miss, f.name)
            ok = False
        mapped = set(f.map)
        if mapped != cells:
            add("fibration-domain", f"fibration of {f.name} is not defined exactly on the face cells",
                sorted(mapped ^ cells), f.name)
            ok = False
        for c, (img, sign) in f.map.items():
            if img not in tc:
                add("fibration-target", f"{c} maps to unknown cell {img} of {f.target}", (c,), f.name)
                ok = False
            elif tc.dims[img] > sc.dims.get(c, -1):
                add("fibration-dimension", f"{c} maps onto the higher-dimensional cell {img}", (c,), f.name)
                ok = False
            if sign not in (1, -1):
                add("fibration-sign", f"{c} has sign {sign}", (c,), f.name)
                ok = False
        if ok:
            for c in f.cells:
                img = f.map[c][0]
                cl = tc.closure(img)
                for g, _ in sc.entries(c):
                    if f.map[g][0] not in cl:
                        add("not-cellular", f"face {g} of {c} leaves the closure of {img}", (c, g), f.name)
                        ok = False
            hit = {img for img, _ in f.map.values()}
            missed = [c for c, _ in tc.cells if c not in hit]
            if missed:
                add("not-surjective", f"fibration of {f.name} misses cells of {f.target}", missed, f.name)
                ok = False
        if f.hom.source != src.group or f.hom.target != tgt.group:
            add("isotropy-mismatch", f"{f.hom.name} does not map {src.group.name} to {tgt.group.name}", (), f.name)
            ok = False
        elif not f.hom.is_injective():
            add("isotropy-order", f"{f.hom.name} is not injective", (), f.name)
            ok = False
        elif src.group.rank == tgt.group.rank and src.group.finite.order >= tgt.group.finite.order:
            add("isotropy-order", f"isotropy does not grow from {f.source} to {f.target}", (), f.name)
            ok = False
        face_ok[f.name] = ok

    if not s.is_acyclic():
        add("poset-cycle", "face relations contain a cycle")
    if any(f.target == s.top for f in s.faces):
        add("poset-top", "a face fibers over the top piece")

    # comparison maps are chain maps ----------------------------------------------
    for f in s.faces:
        if not face_ok.get(f.name):
            continue
        for coeff in CHECK_COEFFS:
            try:
                cm = comparison_map(s, f, coeff)
            except WindowError as e:
                notes.append(f"{f.name}: {coeff.tag} skipped ({e})")
                continue
            except EquiresError as e:
                add("bad-coefficients", str(e), (), f.name)
                continue
            for code, msg, cells in cm.chain_map_issues():
                add(code, f"{msg} ({coeff.tag[0]} {coeff.tag[1]})", cells, f.name)

    # intersecting faces: bases of different dimension, commuting triangles ----------
    good = [f for f in s.faces if face_ok.get(f.name)]
    for i, f1 in enumerate(good):
        for f2 in good[i + 1 :]:
            if f1.source != f2.source:
                continue
            common = sorted(set(f1.cells) & set(f2.cells), key=lambda c: (s.piece(f1.source).complex.dims[c], c))
            if not common:
                continue
            d1 = s.piece(f1.target).complex.dimension
            d2 = s.piece(f2.target).complex.dimension
            if d1 == d2:
                add("ifs-equal-base-dimension",
                    f"faces {f1.name} and {f2.name} intersect but both fiber over {d1}-dimensional bases",
                    common, f1.source)
                continue
            hi, lo = (f1, f2) if d1 > d2 else (f2, f1)
            _triangle(s, hi, lo, common, add)

    return ValidationReport(tuple(issues), tuple(notes))


def _triangle(s: ResolutionSpace, hi, lo, common, add):
    """The corner where ``hi`` and ``lo`` meet must factor through a face hi.target -> lo.target."""
    links = [g for g in s.faces if g.source == hi.target and g.target == lo.target]
    if not links:
        add("ifs-triangle", f"no face from {hi.target} to {lo.target} for the corner of {hi.name} and {lo.name}",
            common[:1], hi.source)
        return
    for c in common:
        img, sgn = hi.map[c]
        ok = False
        for g in links:
            if img in g.map:
                img2, sgn2 = g.map[img]
                low_img, low_sgn = lo.map[c]
                dims = s.piece(lo.target).complex.dims
                same_dim = dims[low_img] == s.piece(hi.source).complex.dims[c]
                if img2 == low_img and (not same_dim or sgn * sgn2 == low_sgn):
                    ok = True
                    break
        if not ok:
            add("ifs-triangle", f"corner cell {c} of {hi.name} and {lo.name} does not commute", (c,), hi.source)
    for g in links:
        try:
            comp = compose(g.hom, hi.hom)
        except EquiresError:
            add("ifs-triangle", f"isotropy maps of {g.name} and {hi.name} do not compose", (), hi.source)
            continue
        if not _same_hom(comp, lo.hom):
            add("ifs-triangle", f"isotropy maps {g.name} o {hi.name} and {lo.name} differ", common[:1], hi.source)
