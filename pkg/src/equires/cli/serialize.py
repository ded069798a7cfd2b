"""JSON text format for resolution spaces.

Integers and rationals are written as strings.  ``dump_space`` is
deterministic and ``parse_space`` inverts it, so shipped files round-trip
byte for byte.  Schema violations raise :class:`SchemaError` carrying a path
such as ``faces[0].cells[3]``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..errors import EquiresError, SchemaError
from ..groups import GroupDesc, GroupHom, SubgroupInclusion, extension, finite_group, product, torus
from ..groups.finite import cyclic, dihedral, direct_product, symmetric, trivial_finite
from ..resolution import CellComplex, Face, Piece, ResolutionSpace

__all__ = ["FORMAT", "parse_space", "dump_space", "space_to_dict", "space_from_dict", "load_space"]

FORMAT = "equires-space/1"


# encoding -----------------------------------------------------------------------


def _finite_spec(spec) -> dict:
    kind = spec[0]
    if kind == "trivial":
        return {"type": "trivial"}
    if kind in ("cyclic", "dihedral", "symmetric"):
        return {"type": kind, "n": str(spec[1])}
    if kind == "product":
        return {"type": "product", "factors": [_finite_spec(s) for s in spec[1:]]}
    raise SchemaError("groups", f"finite group with spec {spec!r} cannot be written")


def _group_dict(g: GroupDesc) -> dict:
    d = {"name": g.name, "kind": g.kind}
    if g.kind == "torus":
        d["rank"] = str(g.rank)
    elif g.kind == "finite":
        d["finite"] = _finite_spec(g.finite.spec)
    elif g.kind == "extension":
        d["rank"] = str(g.rank)
        d["finite"] = _finite_spec(g.finite.spec)
        d["action"] = [[[str(x) for x in row] for row in m] for m in g.action]
    else:
        d["factors"] = [f.name for f in g.factors]
    return d


def _all_groups(s: ResolutionSpace) -> list:
    out, seen = [], {}

    def visit(g):
        if g.name in seen:
            if seen[g.name] != g:
                raise SchemaError("groups", f"two different groups are named {g.name!r}")
            return
        for f in g.factors:
            visit(f)
        seen[g.name] = g
        out.append(g)

    for g in s.groups():
        visit(g)
    for h in s.homs():
        visit(h.source)
        visit(h.target)
    return out


def _hom_dict(h: GroupHom) -> dict:
    return {
        "name": h.name,
        "source": h.source.name,
        "target": h.target.name,
        "inclusion": isinstance(h, SubgroupInclusion),
        "lie": [[str(x) for x in row] for row in h.lie_matrix],
        "finite_map": [{"theta": [str(t) for t in th], "element": str(f)} for th, f in h.finite_map],
    }


def _complex_dict(c: CellComplex, name: str) -> dict:
    cells = []
    for cell, k in c.cells:
        d = {"id": cell, "dim": str(k)}
        ent = c.entries(cell)
        if ent:
            d["boundary"] = [[f, str(sg)] for f, sg in ent]
        cells.append(d)
    return {"name": name, "cells": cells}


def space_to_dict(s: ResolutionSpace) -> dict:
    names = [h.name for h in s.homs()]
    if len(set(names)) != len(names) or "" in names:
        raise SchemaError("homomorphisms", "every homomorphism needs a distinct name")
    cx_names, complexes = {}, []
    for p in s.pieces:
        if p.complex in cx_names:
            continue
        base = p.complex.name or p.name
        nm, i = base, 1
        while nm in {c["name"] for c in complexes}:
            i += 1
            nm = f"{base}{i}"
        cx_names[p.complex] = nm
        complexes.append(_complex_dict(p.complex, nm))
    return {
        "format": FORMAT,
        "name": s.name,
        "total": s.top,
        "acting_group": s.acting_group.name if s.acting_group is not None else None,
        "groups": [_group_dict(g) for g in _all_groups(s)],
        "homomorphisms": [_hom_dict(h) for h in s.homs()],
        "complexes": complexes,
        "strata": [{"name": p.name, "complex": cx_names[p.complex], "group": p.group.name} for p in s.pieces],
        "faces": [{"name": f.name, "source": f.source, "cells": list(f.cells)} for f in s.faces],
        "fibrations": [
            {
                "face": f.name,
                "target": f.target,
                "hom": f.hom.name,
                "map": [{"cell": c, "image": img, "sign": str(sg)} for c, img, sg in f.cell_map],
            }
            for f in s.faces
        ],
        "monodromy": [
            {"stratum": p.name, "cell": c, "entry": str(i), "autos": [a.name for a in autos]}
            for p in s.pieces
            for (c, i), autos in p.twists
        ],
        "fixed_points": [{"stratum": n, "weight": str(w)} for n, w in s.fixed_points],
    }


def dump_space(s: ResolutionSpace) -> str:
    return json.dumps(space_to_dict(s), indent=2) + "\n"


# decoding -----------------------------------------------------------------------


class _Reader:
    """Typed access into the parsed JSON, remembering the path for errors."""

    def __init__(self, value, path: str = ""):
        self.value, self.path = value, path

    def _sub(self, key):
        if isinstance(key, int):
            return f"{self.path}[{key}]"
        return f"{self.path}.{key}" if self.path else key

    def fail(self, message):
        raise SchemaError(self.path, message)

    def get(self, key, default=KeyError):
        if not isinstance(self.value, dict):
            self.fail("expected an object")
        if key not in self.value:
            if default is KeyError:
                raise SchemaError(self._sub(key), "missing")
            return _Reader(default, self._sub(key))
        return _Reader(self.value[key], self._sub(key))

    def items(self) -> list:
        if not isinstance(self.value, list):
            self.fail("expected an array")
        return [_Reader(v, self._sub(i)) for i, v in enumerate(self.value)]

    def str(self) -> str:
        if not isinstance(self.value, str):
            self.fail("expected a string")
        return self.value

    def int(self) -> int:
        s = self.str()
        try:
            return int(s)
        except ValueError:
            self.fail(f"expected an integer string, got {s!r}")

    def frac(self) -> Fraction:
        s = self.str()
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            self.fail(f"expected a rational string, got {s!r}")


def _finite_from(r: _Reader):
    t = r.get("type").str()
    try:
        if t == "trivial":
            return trivial_finite()
        if t == "cyclic":
            return cyclic(r.get("n").int())
        if t == "dihedral":
            return dihedral(r.get("n").int())
        if t == "symmetric":
            return symmetric(r.get("n").int())
        if t == "product":
            return direct_product([_finite_from(x) for x in r.get("factors").items()])
    except SchemaError:
        raise
    except EquiresError as exc:
        r.fail(str(exc))
    r.get("type").fail(f"unknown finite group type {t!r}")


def _lookup(table: dict, r: _Reader, what: str):
    key = r.str()
    if key not in table:
        r.fail(f"unknown {what} {key!r}")
    return table[key]


def _group_from(r: _Reader, groups: dict) -> GroupDesc:
    name = r.get("name").str()
    kind = r.get("kind").str()
    try:
        if kind == "torus":
            return torus(r.get("rank").int(), name)
        if kind == "finite":
            return finite_group(_finite_from(r.get("finite")), name)
        if kind == "extension":
            act = [[[x.int() for x in row.items()] for row in m.items()] for m in r.get("action").items()]
            return extension(r.get("rank").int(), _finite_from(r.get("finite")), act, name)
        if kind == "product":
            return product(*[_lookup(groups, f, "group") for f in r.get("factors").items()], name=name)
    except SchemaError:
        raise
    except EquiresError as exc:
        r.fail(str(exc))
    r.get("kind").fail(f"unknown group kind {kind!r}")


def _hom_from(r: _Reader, groups: dict) -> GroupHom:
    src = _lookup(groups, r.get("source"), "group")
    tgt = _lookup(groups, r.get("target"), "group")
    A = tuple(tuple(x.int() for x in row.items()) for row in r.get("lie").items())
    fm = tuple(
        (tuple(t.frac() for t in e.get("theta").items()), e.get("element").int()) for e in r.get("finite_map").items()
    )
    inc = r.get("inclusion", False).value
    if not isinstance(inc, bool):
        r.get("inclusion").fail("expected true or false")
    cls = SubgroupInclusion if inc else GroupHom
    try:
        return cls(src, tgt, A, fm, r.get("name").str())
    except EquiresError as exc:
        r.fail(str(exc))


def _complex_from(r: _Reader) -> CellComplex:
    cells, bd = [], {}
    seen = set()
    for c in r.get("cells").items():
        cid = c.get("id").str()
        if cid in seen:
            c.get("id").fail(f"duplicate cell id {cid!r}")
        seen.add(cid)
        k = c.get("dim").int()
        if k < 0:
            c.get("dim").fail("dimension must be non-negative")
        cells.append((cid, k))
    for c in r.get("cells").items():
        ent = []
        for e in c.get("boundary", []).items():
            pair = e.items()
            if len(pair) != 2:
                e.fail("boundary entries are [cell, sign] pairs")
            f = pair[0].str()
            if f not in seen:
                pair[0].fail(f"unknown cell {f!r}")
            ent.append((f, pair[1].int()))
        if ent:
            bd[c.get("id").str()] = ent
    return CellComplex.build(cells, bd, name=r.get("name").str())


def space_from_dict(data) -> ResolutionSpace:
    root = _Reader(data)
    if not isinstance(data, dict):
        root.fail("expected an object at top level")
    fmt = root.get("format").str()
    if fmt != FORMAT:
        root.get("format").fail(f"unsupported format {fmt!r}")
    groups = {}
    for g in root.get("groups").items():
        grp = _group_from(g, groups)
        if grp.name in groups:
            g.get("name").fail(f"duplicate group {grp.name!r}")
        groups[grp.name] = grp
    homs = {}
    for h in root.get("homomorphisms").items():
        hom = _hom_from(h, groups)
        if hom.name in homs:
            h.get("name").fail(f"duplicate homomorphism {hom.name!r}")
        homs[hom.name] = hom
    complexes = {}
    for c in root.get("complexes").items():
        cx = _complex_from(c)
        complexes[c.get("name").str()] = cx
    strata = {}
    for p in root.get("strata").items():
        nm = p.get("name").str()
        if nm in strata:
            p.get("name").fail(f"duplicate stratum {nm!r}")
        strata[nm] = [nm, _lookup(complexes, p.get("complex"), "complex"), _lookup(groups, p.get("group"), "group"), []]
    top = root.get("total")
    _lookup(strata, top, "stratum")
    for m in root.get("monodromy", []).items():
        st = _lookup(strata, m.get("stratum"), "stratum")
        cell = m.get("cell").str()
        if cell not in st[1]:
            m.get("cell").fail(f"unknown cell {cell!r} of {st[0]}")
        idx = m.get("entry").int()
        if not 0 <= idx < len(st[1].entries(cell)):
            m.get("entry").fail(f"{cell} has no boundary entry {idx}")
        autos = tuple(_lookup(homs, a, "homomorphism") for a in m.get("autos").items())
        st[3].append(((cell, idx), autos))
    fibs = {}
    for fb in root.get("fibrations").items():
        fibs.setdefault(fb.get("face").str(), fb)
    faces = []
    for fr in root.get("faces").items():
        name = fr.get("name").str()
        src = _lookup(strata, fr.get("source"), "stratum")
        cells = []
        for c in fr.get("cells").items():
            cid = c.str()
            if cid not in src[1]:
                c.fail(f"unknown cell {cid!r} of stratum {src[0]}")
            cells.append(cid)
        if name not in fibs:
            fr.get("name").fail(f"no fibration for face {name!r}")
        fb = fibs[name]
        tgt = _lookup(strata, fb.get("target"), "stratum")
        hom = _lookup(homs, fb.get("hom"), "homomorphism")
        cmap = []
        for e in fb.get("map").items():
            c, img = e.get("cell").str(), e.get("image").str()
            if c not in cells:
                e.get("cell").fail(f"{c!r} is not a cell of face {name}")
            if img not in tgt[1]:
                e.get("image").fail(f"unknown cell {img!r} of stratum {tgt[0]}")
            cmap.append((c, img, e.get("sign").int()))
        faces.append(Face(name, src[0], tgt[0], tuple(cells), tuple(cmap), hom))
    known = {f.name for f in faces}
    for i, fb in enumerate(root.get("fibrations").items()):
        if fb.get("face").str() not in known:
            fb.get("face").fail(f"fibration for unknown face {fb.get('face').str()!r}")
    fixed = tuple(
        (_lookup(strata, f.get("stratum"), "stratum")[0], f.get("weight").int()) for f in root.get("fixed_points", []).items()
    )
    acting = root.get("acting_group", None)
    act = None if acting.value is None else _lookup(groups, acting, "group")
    pieces = tuple(Piece(n, cx, g, tuple(tw)) for n, cx, g, tw in strata.values())
    return ResolutionSpace(root.get("name").str(), top.str(), pieces, tuple(faces), act, fixed)


def parse_space(text: str) -> ResolutionSpace:
    """Parse the JSON text format; malformed JSON raises ``json.JSONDecodeError``."""
    return space_from_dict(json.loads(text))


def load_space(path) -> ResolutionSpace:
    with open(path, encoding="utf-8") as fh:
        return parse_space(fh.read())
