"""Finite cell complexes and flat local coefficient systems on them.

Boundary data is a list of *entries* ``(face, incidence)`` per cell.  A cell
may list the same face twice (the one-vertex circle), so transports of a local
system are keyed by ``(cell, entry index)``, not by the face.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from ..errors import FlatnessError
from ..linalg import Matrix, invariant_factors, rank

__all__ = ["CellComplex", "LocalSystem", "point", "interval", "circle", "polygon"]


@dataclass(frozen=True, eq=False)
class CellComplex:
    cells: tuple  # ((id, dim), ...)
    bdry: tuple  # ((id, ((face, incidence), ...)), ...) for cells with nonempty boundary
    name: str = ""

    @classmethod
    def build(cls, cells: Iterable, boundary: Mapping | None = None, name: str = "") -> "CellComplex":
        cells = tuple((str(c), int(d)) for c, d in cells)
        boundary = boundary or {}
        bd = tuple((str(c), tuple((str(f), int(s)) for f, s in boundary[c])) for c, _ in cells if boundary.get(c))
        unknown = set(boundary) - {c for c, _ in cells}
        if unknown:
            raise ValueError(f"boundary given for unknown cells {sorted(unknown)}")
        return cls(cells, bd, name)

    # lookup ------------------------------------------------------------------

    @cached_property
    def dims(self) -> dict:
        d = {}
        for c, k in self.cells:
            if c in d:
                raise ValueError(f"duplicate cell id {c!r}")
            d[c] = k
        return d

    @cached_property
    def boundary(self) -> dict:
        return {c: e for c, e in self.bdry}

    def entries(self, cell: str) -> tuple:
        return self.boundary.get(cell, ())

    @property
    def dimension(self) -> int:
        return max((k for _, k in self.cells), default=-1)

    @cached_property
    def _by_dim(self) -> dict:
        out: dict = {}
        for c, k in self.cells:
            out.setdefault(k, []).append(c)
        return {k: tuple(v) for k, v in out.items()}

    def cells_of_dim(self, q: int) -> tuple:
        return self._by_dim.get(q, ())

    @cached_property
    def _index(self) -> dict:
        return {c: i for k, cs in self._by_dim.items() for i, c in enumerate(cs)}

    def index(self, cell: str) -> int:
        return self._index[cell]

    def __contains__(self, cell) -> bool:
        return cell in self.dims

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, CellComplex) and (self.cells, self.bdry) == (other.cells, other.bdry)

    def __hash__(self):
        return hash((self.cells, self.bdry))

    def __repr__(self):
        counts = [len(self.cells_of_dim(q)) for q in range(self.dimension + 1)]
        return f"CellComplex({self.name or '?'}, cells={counts})"

    # structure -----------------------------------------------------------------

    def boundary_matrix(self, q: int) -> Matrix:
        """Integer matrix of the boundary from q-cells to (q-1)-cells."""
        rows_c, cols_c = self.cells_of_dim(q - 1), self.cells_of_dim(q)
        rows: dict = {}
        for j, c in enumerate(cols_c):
            for f, s in self.entries(c):
                if f in self.dims and self.dims[f] == q - 1:
                    i = self.index(f)
                    r = rows.setdefault(i, {})
                    r[j] = r.get(j, 0) + s
        return Matrix(len(rows_c), len(cols_c), rows)

    def structure_issues(self) -> list:
        """Problems with the raw boundary data, as ``(code, message, cells)``."""
        out = []
        for c, k in self.cells:
            for idx, (f, s) in enumerate(self.entries(c)):
                if f not in self.dims:
                    out.append(("dangling-face", f"cell {c} lists unknown face {f}", (c, f)))
                elif self.dims[f] != k - 1:
                    out.append(("face-dimension", f"face {f} of {c} has dimension {self.dims[f]}, expected {k - 1}", (c, f)))
                if s == 0:
                    out.append(("zero-incidence", f"entry {idx} of {c} has incidence 0", (c, f)))
        if out:
            return out
        for q in range(2, self.dimension + 1):
            prod = self.boundary_matrix(q - 1) @ self.boundary_matrix(q)
            for i, j, v in prod.nonzero_entries():
                cell = self.cells_of_dim(q)[j]
                ff = self.cells_of_dim(q - 2)[i]
                out.append(("boundary-squared", f"boundary of boundary of {cell} has coefficient {v} on {ff}", (cell, ff)))
        return out

    def closure(self, cell: str) -> set:
        seen, stack = {cell}, [cell]
        while stack:
            for f, _ in self.entries(stack.pop()):
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
        return seen

    def is_closed(self, cells: Iterable[str]) -> bool:
        cs = set(cells)
        return all(f in cs for c in cs for f, _ in self.entries(c))

    def subcomplex(self, cells: Iterable[str], name: str = "") -> "CellComplex":
        cs = set(cells)
        missing = cs - set(self.dims)
        if missing:
            raise ValueError(f"unknown cells {sorted(missing)}")
        if not self.is_closed(cs):
            bad = sorted(f for c in cs for f, _ in self.entries(c) if f not in cs)
            raise ValueError(f"cells are not closed under taking faces (missing {bad})")
        return CellComplex(
            tuple((c, k) for c, k in self.cells if c in cs),
            tuple((c, e) for c, e in self.bdry if c in cs),
            name,
        )

    def is_regular(self) -> bool:
        """Distinct faces with incidence +-1, and every 1-cell has two distinct ends."""
        for c, k in self.cells:
            ent = self.entries(c)
            faces = [f for f, _ in ent]
            if len(set(faces)) != len(faces) or any(abs(s) != 1 for _, s in ent):
                return False
            if k == 1 and len(ent) != 2:
                return False
            if k >= 1 and not ent:
                return False
        return True

    def components(self) -> list:
        parent = {c: c for c in self.dims}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, ent in self.bdry:
            for f, _ in ent:
                if f in parent:
                    parent[find(f)] = find(c)
        groups: dict = {}
        for c, _ in self.cells:
            groups.setdefault(find(c), []).append(c)
        return [tuple(v) for v in groups.values()]

    def betti(self) -> list:
        out = []
        for q in range(self.dimension + 1):
            n = len(self.cells_of_dim(q))
            out.append(n - rank(self.boundary_matrix(q)) - rank(self.boundary_matrix(q + 1)))
        return out

    def integer_homology(self) -> list:
        """``[(free rank, torsion invariant factors)]`` per degree."""
        out = []
        for q in range(self.dimension + 1):
            n = len(self.cells_of_dim(q))
            dq = self.boundary_matrix(q)
            d1 = self.boundary_matrix(q + 1)
            inv = invariant_factors(d1)
            free = n - rank(dq) - len(inv)
            out.append((free, tuple(x for x in inv if x > 1)))
        return out

    def components_acyclic(self) -> bool:
        """True iff every connected component has the integral homology of a point."""
        for comp in self.components():
            h = self.subcomplex(comp).integer_homology()
            if h[0] != (1, ()) or any(x != (0, ()) for x in h[1:]):
                return False
        return True


def point(name: str = "pt") -> CellComplex:
    return CellComplex.build([(name, 0)], name=name)


def interval(a: str = "v0", b: str = "v1", e: str = "e", name: str = "interval") -> CellComplex:
    """``a --e--> b`` with boundary ``b - a``."""
    return CellComplex.build([(a, 0), (b, 0), (e, 1)], {e: [(b, 1), (a, -1)]}, name=name)


def circle(n: int = 1, name: str = "circle") -> CellComplex:
    """Circle with n vertices and n edges; n=1 gives the one-vertex circle."""
    cells = [(f"v{i}", 0) for i in range(n)] + [(f"e{i}", 1) for i in range(n)]
    bd = {f"e{i}": [(f"v{(i + 1) % n}", 1), (f"v{i}", -1)] for i in range(n)}
    return CellComplex.build(cells, bd, name=name)


def polygon(n: int, prefix: str = "", name: str = "polygon") -> CellComplex:
    """A closed n-gon: n vertices, n edges and one 2-cell."""
    c = circle(n)
    cells = [(prefix + x, k) for x, k in c.cells] + [(prefix + "f", 2)]
    bd = {prefix + x: [(prefix + f, s) for f, s in e] for x, e in c.bdry}
    bd[prefix + "f"] = [(prefix + f"e{i}", 1) for i in range(n)]
    return CellComplex.build(cells, bd, name=name)


@dataclass(frozen=True, eq=False)
class LocalSystem:
    """Flat coefficient system: one fiber of fixed rank per cell, transports per entry.

    The transport of entry ``(cell, i)`` maps the fiber over the face to the
    fiber over ``cell``; missing entries mean the identity.
    """

    base: CellComplex
    rank: int
    transports: tuple = ()  # (((cell, idx), Matrix), ...)
    fiber: tuple = ()  # descriptive tag, e.g. ("borel", group name, j)
    basis: tuple = ()  # optional names of fiber coordinates

    @cached_property
    def _tmap(self) -> dict:
        return dict(self.transports)

    def transport(self, cell: str, idx: int) -> Matrix:
        m = self._tmap.get((cell, idx))
        return m if m is not None else Matrix.identity(self.rank)

    def coboundary(self, q: int) -> Matrix:
        """Matrix of ``(du)(s) = sum over entries (t, e) of s: e * T(u(t))``."""
        r = self.rank
        rows_c = self.base.cells_of_dim(q + 1)
        cols_c = self.base.cells_of_dim(q)
        rows: dict = {}
        if r == 0:
            return Matrix(0, 0)
        for i, s in enumerate(rows_c):
            for idx, (t, e) in enumerate(self.base.entries(s)):
                if self.base.dims.get(t) != q:
                    continue
                j = self.base.index(t)
                T = self.transport(s, idx)
                for a, row in T.rows.items():
                    tgt = rows.setdefault(i * r + a, {})
                    for b, v in row.items():
                        tgt[j * r + b] = tgt.get(j * r + b, 0) + e * v
        return Matrix(len(rows_c) * r, len(cols_c) * r, rows)

    def flatness_issues(self) -> list:
        out = []
        r = self.rank
        if r == 0:
            return out
        for q in range(self.base.dimension - 1):
            prod = self.coboundary(q + 1) @ self.coboundary(q)
            seen = set()
            for i, j, _ in prod.nonzero_entries():
                cell = self.base.cells_of_dim(q + 2)[i // r]
                ff = self.base.cells_of_dim(q)[j // r]
                if (cell, ff) not in seen:
                    seen.add((cell, ff))
                    out.append(("not-flat", f"transports around {cell} do not close up at {ff}", (cell, ff)))
        return out

    def check_flat(self):
        issues = self.flatness_issues()
        if issues:
            raise FlatnessError(issues[0][1], issues[0][2])

    def restrict(self, sub: CellComplex) -> "LocalSystem":
        keep = tuple((k, m) for k, m in self.transports if k[0] in sub)
        return LocalSystem(sub, self.rank, keep, self.fiber, self.basis)

    def is_trivial(self) -> bool:
        ident = Matrix.identity(self.rank)
        return all(m == ident for _, m in self.transports)


def trivial_system(base: CellComplex, rank: int = 1) -> LocalSystem:
    return LocalSystem(base, rank)


def twisted_system(base: CellComplex, rank: int, transports: Mapping) -> LocalSystem:
    tr = tuple(sorted(((str(c), int(i)), m if isinstance(m, Matrix) else Matrix.from_dense(m)) for (c, i), m in transports.items()))
    return LocalSystem(base, rank, tr)


__all__ += ["trivial_system", "twisted_system"]
