"""Finite cochain complexes over Q (or Z) and their cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..errors import ChainMapError, ComplexError
from ..linalg import Matrix, invariant_factors, nullspace, rank
from ..resolution.cells import CellComplex, LocalSystem

__all__ = [
    "Complex",
    "ChainMap",
    "GradedCohomology",
    "cochain_complex",
    "cohomology",
    "cocycles",
    "is_coboundary",
    "induced_rank",
]


@dataclass(frozen=True, eq=False)
class Complex:
    """``C^k`` of dimension ``dims[k]`` with ``d[k]: C^k -> C^{k+1}``."""

    dims: tuple  # ((k, n), ...)
    diffs: tuple = ()  # ((k, Matrix), ...)
    name: str = ""

    @classmethod
    def build(cls, dims: dict, diffs: dict | None = None, name: str = "", check: bool = True) -> "Complex":
        x = cls(tuple(sorted((int(k), int(n)) for k, n in dims.items())), tuple(sorted((diffs or {}).items(), key=lambda kv: kv[0])), name)
        if check:
            x.check()
        return x

    @cached_property
    def _dims(self) -> dict:
        return dict(self.dims)

    @cached_property
    def _diffs(self) -> dict:
        return dict(self.diffs)

    def dim(self, k: int) -> int:
        return self._dims.get(k, 0)

    def d(self, k: int) -> Matrix:
        m = self._diffs.get(k)
        return m if m is not None else Matrix.zeros(self.dim(k + 1), self.dim(k))

    @property
    def degrees(self) -> range:
        ks = [k for k, n in self.dims if n]
        if not ks:
            return range(0)
        return range(min(ks), max(ks) + 1)

    def check(self):
        for k, m in self.diffs:
            if m.shape != (self.dim(k + 1), self.dim(k)):
                raise ComplexError(f"{self.name}: d[{k}] has shape {m.shape}, expected {(self.dim(k + 1), self.dim(k))}")
        for k in self.degrees:
            if not (self.d(k + 1) @ self.d(k)).is_zero():
                raise ComplexError(f"{self.name}: d[{k + 1}] o d[{k}] != 0")

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in self.dims)

    def __repr__(self):
        return f"Complex({self.name or '?'}, dims={dict(self.dims)})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: Complex
    target: Complex
    maps: tuple  # ((k, Matrix), ...)

    @classmethod
    def build(cls, source: Complex, target: Complex, maps: dict, check: bool = True) -> "ChainMap":
        f = cls(source, target, tuple(sorted(maps.items(), key=lambda kv: kv[0])))
        if check:
            f.check()
        return f

    @cached_property
    def _maps(self) -> dict:
        return dict(self.maps)

    def at(self, k: int) -> Matrix:
        m = self._maps.get(k)
        return m if m is not None else Matrix.zeros(self.target.dim(k), self.source.dim(k))

    def degrees(self) -> range:
        ks = list(self.source.degrees) + list(self.target.degrees)
        return range(min(ks), max(ks) + 1) if ks else range(0)

    def check(self):
        for k, m in self.maps:
            if m.shape != (self.target.dim(k), self.source.dim(k)):
                raise ChainMapError(f"map in degree {k} has shape {m.shape}", degree=k)
        for k in self.degrees():
            if self.target.d(k) @ self.at(k) != self.at(k + 1) @ self.source.d(k):
                raise ChainMapError(f"not a chain map in degree {k}", degree=k)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``"""
        ks = set(self._maps) | set(other._maps)
        return ChainMap(other.source, self.target, tuple(sorted((k, self.at(k) @ other.at(k)) for k in ks)))


@dataclass(frozen=True)
class GradedCohomology:
    dims: tuple  # ((k, dim), ...)
    torsion: tuple = ()  # ((k, invariant factors > 1), ...)
    integral: bool = False

    def __getitem__(self, k: int) -> int:
        return dict(self.dims).get(k, 0)

    def as_list(self, lo: int = 0, hi: int | None = None) -> list:
        d = dict(self.dims)
        if hi is None:
            hi = max(d, default=lo - 1)
        return [d.get(k, 0) for k in range(lo, hi + 1)]

    @property
    def even(self) -> int:
        return sum(n for k, n in self.dims if k % 2 == 0)

    @property
    def odd(self) -> int:
        return sum(n for k, n in self.dims if k % 2)

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in self.dims)


def cochain_complex(c: CellComplex, L: LocalSystem | None = None, check: bool = True) -> Complex:
    """Cellular cochains with local coefficients; rejects non-flat systems."""
    if L is None:
        L = LocalSystem(c, 1)
    if L.base != c:
        raise ComplexError("local system lives on a different complex")
    if check:
        L.check_flat()
    dims = {q: len(c.cells_of_dim(q)) * L.rank for q in range(c.dimension + 1)}
    diffs = {q: L.coboundary(q) for q in range(c.dimension)}
    return Complex.build(dims, diffs, name=c.name, check=False)


def cohomology(x: Complex, integral: bool = False) -> GradedCohomology:
    out, tors = [], []
    ranks = {k: rank(x.d(k)) for k in range(x.degrees.start - 1, x.degrees.stop)} if x.degrees else {}
    for k in x.degrees:
        out.append((k, x.dim(k) - ranks.get(k, 0) - ranks.get(k - 1, 0)))
        if integral:
            m = x.d(k - 1)
            if not m.is_integral():
                raise ComplexError("integral cohomology needs integer differentials")
            t = tuple(v for v in invariant_factors(m) if v > 1)
            if t:
                tors.append((k, t))
    return GradedCohomology(tuple(out), tuple(tors), integral)


def cocycles(x: Complex, k: int) -> Matrix:
    return nullspace(x.d(k)) if x.dim(k) else Matrix.zeros(0, 0)


def is_coboundary(x: Complex, k: int, v: Matrix) -> bool:
    """Is every column of ``v`` (in C^k) a coboundary?"""
    B = x.d(k - 1)
    return rank(Matrix.hstack([B, v], nrows=x.dim(k))) == rank(B)


def induced_rank(f: ChainMap, k: int) -> int:
    """Rank of the map induced by ``f`` on ``H^k``."""
    Z = cocycles(f.source, k)
    if Z.ncols == 0:
        return 0
    B = f.target.d(k - 1)
    img = f.at(k) @ Z
    return rank(Matrix.hstack([B, img], nrows=f.target.dim(k))) - rank(B)
