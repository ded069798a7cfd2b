"""Subdivision of cell complexes, local systems and resolution spaces.

Regular complexes get the barycentric subdivision: its cells are the chains
``s_0 < s_1 < ... < s_k`` of the face poset, oriented by that order.  The
fiber over a chain is the fiber over its top cell, so a transport is the
identity unless the top cell is dropped; then it composes the old transports
along a path of boundary entries.

Complexes that are not regular but have dimension at most one (the one-vertex
circle) get an edge-midpoint subdivision instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain as ichain

from ..linalg import Matrix
from ..resolution.cells import CellComplex, LocalSystem

__all__ = ["Subdivision", "subdivision", "subdivide", "subdivide_space"]


@dataclass(frozen=True)
class Subdivision:
    old: CellComplex
    new: CellComplex
    kind: str  # "barycentric" | "midpoint"
    paths: dict  # (new cell, entry index) -> tuple of old entries (cell, idx), first applied first
    origin: dict  # new cell -> flag of old cells (barycentric) or (old cell, part) (midpoint)

    def transport_system(self, L: LocalSystem) -> LocalSystem:
        tr = []
        for key, path in sorted(self.paths.items()):
            m = Matrix.identity(L.rank)
            for c, i in path:
                m = L.transport(c, i) @ m
            if m != Matrix.identity(L.rank):
                tr.append((key, m))
        return LocalSystem(self.new, L.rank, tuple(tr), L.fiber, L.basis)

    def transport_twists(self, twists: dict) -> tuple:
        out = []
        for key, path in sorted(self.paths.items()):
            autos = tuple(ichain.from_iterable(twists.get(e, ()) for e in path))
            if autos:
                out.append((key, autos))
        return tuple(out)


def _flag_name(flag) -> str:
    return flag[0] if len(flag) == 1 else "[" + ",".join(flag) + "]"


def _path_up(c: CellComplex, low: str, high: str) -> tuple:
    """Boundary entries leading from ``low`` up to ``high``, lowest first."""
    # depth-first search downward from high, deterministic by entry order
    def search(cell):
        if cell == low:
            return ()
        for idx, (f, _) in enumerate(c.entries(cell)):
            if low in c.closure(f):
                rest = search(f)
                if rest is not None:
                    return rest + ((cell, idx),)
        return None

    p = search(high)
    if p is None:
        raise ValueError(f"{low} is not a face of {high}")
    return p


def _barycentric(c: CellComplex) -> Subdivision:
    below = {x: c.closure(x) - {x} for x, _ in c.cells}
    pos = {x: i for i, (x, _) in enumerate(c.cells)}
    flags = []

    def grow(flag):
        flags.append(flag)
        for f in sorted(below[flag[0]], key=lambda x: pos[x]):
            grow((f,) + flag)

    for x, _ in c.cells:
        grow((x,))
    flags.sort(key=lambda fl: (len(fl), [pos[x] for x in fl]))
    names = {fl: _flag_name(fl) for fl in flags}
    cells = [(names[fl], len(fl) - 1) for fl in flags]
    bd, paths = {}, {}
    for fl in flags:
        if len(fl) == 1:
            continue
        ent = []
        for i in range(len(fl)):
            face = fl[:i] + fl[i + 1 :]
            ent.append((names[face], (-1) ** i))
            if i == len(fl) - 1:
                p = _path_up(c, fl[-2], fl[-1])
                if p:
                    paths[(names[fl], i)] = p
        bd[names[fl]] = ent
    new = CellComplex.build(cells, bd, name=c.name)
    return Subdivision(c, new, "barycentric", paths, {names[fl]: fl for fl in flags})


def _midpoint(c: CellComplex) -> Subdivision:
    cells, bd, paths, origin = [], {}, {}, {}
    for x, k in c.cells:
        if k == 0:
            cells.append((x, 0))
            origin[x] = (x, None)
    for x, k in c.cells:
        if k == 1:
            m = f"{x}/m"
            cells.append((m, 0))
            origin[m] = (x, "m")
    for x, k in c.cells:
        if k == 1:
            m = f"{x}/m"
            for idx, (v, s) in enumerate(c.entries(x)):
                h = f"{x}/{idx}"
                cells.append((h, 1))
                origin[h] = (x, idx)
                bd[h] = [(v, s), (m, -s)]
                paths[(h, 0)] = ((x, idx),)
    new = CellComplex.build(cells, bd, name=c.name)
    return Subdivision(c, new, "midpoint", paths, origin)


def subdivision(c: CellComplex) -> Subdivision:
    if c.is_regular():
        return _barycentric(c)
    if c.dimension <= 1:
        return _midpoint(c)
    raise ValueError(f"{c.name or 'complex'} is neither regular nor of dimension <= 1")


def subdivide(c: CellComplex, L: LocalSystem | None = None):
    """One subdivision of ``c``; with ``L`` also returns the induced system."""
    sd = subdivision(c)
    if L is None:
        return sd.new
    if L.base != c:
        raise ValueError("local system lives on a different complex")
    return sd.new, sd.transport_system(L)


# spaces ----------------------------------------------------------------------------


def _image_cell(sd_src: Subdivision, sd_tgt: Subdivision, face_map: dict, new_cell: str):
    """Image of a subdivided face cell: (cell, sign)."""
    tc = sd_tgt.old
    if sd_src.kind == "barycentric":
        flag = sd_src.origin[new_cell]
        imgs = []
        for x in flag:
            y = face_map[x][0]
            if not imgs or imgs[-1] != y:
                imgs.append(y)
        if sd_tgt.kind == "barycentric":
            return _flag_name(tuple(imgs)), 1
        # midpoint target: a vertex, a midpoint or a half edge
        if len(imgs) == 1:
            y = imgs[0]
            return (y if tc.dims[y] == 0 else f"{y}/m"), 1
        w, e = imgs
        ks = [k for k, (v, _) in enumerate(tc.entries(e)) if v == w]
        if len(ks) != 1:
            raise ValueError(f"cannot place {new_cell} on a unique half of {e}")
        return f"{e}/{ks[0]}", -tc.entries(e)[ks[0]][1]
    x, part = sd_src.origin[new_cell]
    y, sign = face_map[x]
    if part is None or tc.dims[y] == 0:
        # vertices, and anything collapsed onto a vertex, keep their names
        return y, 1
    if part == "m":
        return (y if sd_tgt.kind == "barycentric" else f"{y}/m"), 1
    v, s = sd_src.old.entries(x)[part]
    w = face_map[v][0]
    if sd_tgt.kind == "barycentric":
        return _flag_name((w, y)), -s
    ks = [k for k, (u, t) in enumerate(tc.entries(y)) if u == w and t == sign * s]
    if len(ks) != 1:
        raise ValueError(f"cannot place {new_cell} on a unique half of {y}")
    return f"{y}/{ks[0]}", sign


def subdivide_space(s):
    """Subdivide every piece of a resolution space, carrying faces and twists along."""
    from ..resolution.space import Face, Piece, ResolutionSpace

    sds = {p.name: subdivision(p.complex) for p in s.pieces}
    pieces = tuple(
        Piece(p.name, sds[p.name].new, p.group, sds[p.name].transport_twists(p.twist_map)) for p in s.pieces
    )
    faces = []
    for f in s.faces:
        src, tgt = sds[f.source], sds[f.target]
        old_cells = set(f.cells)
        new_cells = []
        for nc, _ in src.new.cells:
            o = src.origin[nc]
            top = o[-1] if src.kind == "barycentric" else o[0]
            if top in old_cells:
                new_cells.append(nc)
        cmap = tuple((nc,) + _image_cell(src, tgt, f.map, nc) for nc in new_cells)
        faces.append(Face(f.name, f.source, f.target, tuple(new_cells), cmap, f.hom))
    return ResolutionSpace(s.name, s.top, pieces, tuple(faces), s.acting_group, s.fixed_points)
