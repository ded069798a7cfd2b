"""Invariant polynomials on the Lie algebra and the localization map.

Polynomials are dictionaries ``{exponent tuple: Fraction}``.  For a group
``T^n ⋊ F`` the invariants of degree ``j`` are the Reynolds averages of the
degree ``j`` monomials under ``x -> M_f x``, brought to reduced row echelon
form so that coordinates can be read off at pivot monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from ..linalg import Matrix, _rref
from .core import GroupDesc
from .hom import GroupHom
from .rep import RepRingElem, rep_character

__all__ = [
    "monomials",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_substitute",
    "InvBasis",
    "invariant_poly_basis",
    "InvPoly",
    "localize_char",
    "poly_restrict",
]


def monomials(n: int, j: int) -> tuple:
    """Exponent tuples of total degree j, in descending lexicographic order."""
    if n == 0:
        return ((),) if j == 0 else ()
    if n == 1:
        return ((j,),)
    out = []
    for a in range(j, -1, -1):
        out.extend((a,) + rest for rest in monomials(n - 1, j - a))
    return tuple(out)


def poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def poly_scale(a: dict, c) -> dict:
    return {k: c * v for k, v in a.items() if c * v}


def poly_mul(a: dict, b: dict, max_degree: int | None = None) -> dict:
    out: dict = {}
    for e1, x in a.items():
        for e2, y in b.items():
            e = tuple(p + q for p, q in zip(e1, e2)) if e1 else e2
            if max_degree is not None and sum(e) > max_degree:
                continue
            out[e] = out.get(e, 0) + x * y
    return {k: v for k, v in out.items() if v}


def poly_degree_part(a: dict, j: int) -> dict:
    return {k: v for k, v in a.items() if sum(k) == j}


def poly_substitute(p: dict, A, n_new: int) -> dict:
    """``p(A y)`` where ``A`` is ``n_old x n_new``."""
    lin = [{tuple(int(k == c) for k in range(n_new)): Fraction(A[i][c]) for c in range(n_new) if A[i][c]} for i in range(len(A))]
    one = {tuple(0 for _ in range(n_new)): Fraction(1)}
    out: dict = {}
    powers: dict = {}
    for e, v in p.items():
        term = dict(one)
        for i, a in enumerate(e):
            if a:
                key = (i, a)
                if key not in powers:
                    q = dict(one)
                    for _ in range(a):
                        q = poly_mul(q, lin[i])
                    powers[key] = q
                term = poly_mul(term, powers[key])
        out = poly_add(out, poly_scale(term, v))
    return out


@dataclass(frozen=True)
class InvBasis:
    group: GroupDesc
    degree: int
    monomials: tuple
    rows: tuple  # basis polynomials (dicts), reduced echelon in monomial order
    pivots: tuple  # pivot monomial of each row

    def __len__(self):
        return len(self.rows)

    @property
    def polys(self) -> list:
        return [dict(r) for r in self.rows]

    def coords(self, p: dict) -> tuple:
        c = tuple(Fraction(p.get(m, 0)) for m in self.pivots)
        rest = dict(p)
        for x, row in zip(c, self.rows):
            rest = poly_add(rest, poly_scale(dict(row), -x))
        if rest:
            raise ValueError(f"polynomial is not {self.group.name}-invariant of degree {self.degree}")
        return c

    def poly(self, coords) -> dict:
        out: dict = {}
        for x, row in zip(coords, self.rows):
            out = poly_add(out, poly_scale(dict(row), Fraction(x)))
        return out


@lru_cache(maxsize=None)
def invariant_poly_basis(g: GroupDesc, j: int) -> InvBasis:
    """A rational basis of the degree-j invariant polynomials on the Lie algebra."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    mons = monomials(g.rank, j)
    if g.acts_trivially:
        rows = tuple(tuple({m: Fraction(1)}.items()) for m in mons)
        return InvBasis(g, j, mons, rows, mons)
    pos = {m: i for i, m in enumerate(mons)}
    avg_rows = {}
    for i, m in enumerate(mons):
        acc: dict = {}
        for f in range(g.finite.order):
            acc = poly_add(acc, poly_substitute({m: Fraction(1)}, g.action[f], g.rank))
        if acc:
            avg_rows[i] = {pos[k]: v for k, v in acc.items()}
    red = _rref(Matrix(len(mons), len(mons), avg_rows))
    rows = tuple(tuple(sorted(((mons[c], v) for c, v in row.items()), reverse=True)) for _, row in red)
    pivots = tuple(mons[c] for c, _ in red)
    return InvBasis(g, j, mons, rows, pivots)


@dataclass(frozen=True)
class InvPoly:
    """Truncated element of the invariant polynomial ring, by degree coordinates."""

    group: GroupDesc
    max_degree: int
    comps: tuple  # comps[j] = coordinates in invariant_poly_basis(group, j)

    @classmethod
    def from_poly(cls, group: GroupDesc, p: dict, max_degree: int) -> "InvPoly":
        comps = []
        for j in range(max_degree + 1):
            comps.append(invariant_poly_basis(group, j).coords(poly_degree_part(p, j)))
        return cls(group, max_degree, tuple(comps))

    @classmethod
    def zero(cls, group: GroupDesc, max_degree: int) -> "InvPoly":
        return cls(group, max_degree, tuple((Fraction(0),) * len(invariant_poly_basis(group, j)) for j in range(max_degree + 1)))

    def component(self, j: int) -> tuple:
        return self.comps[j] if 0 <= j <= self.max_degree else ()

    def to_poly(self) -> dict:
        out: dict = {}
        for j, c in enumerate(self.comps):
            out = poly_add(out, invariant_poly_basis(self.group, j).poly(c))
        return out

    def __add__(self, other: "InvPoly") -> "InvPoly":
        D = min(self.max_degree, other.max_degree)
        return InvPoly(self.group, D, tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.comps[: D + 1], other.comps[: D + 1])))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "InvPoly":
        return InvPoly(self.group, self.max_degree, tuple(tuple(c * a for a in x) for x in self.comps))

    def __mul__(self, other: "InvPoly") -> "InvPoly":
        D = min(self.max_degree, other.max_degree)
        return InvPoly.from_poly(self.group, poly_mul(self.to_poly(), other.to_poly(), D), D)

    def is_zero(self) -> bool:
        return not any(any(c) for c in self.comps)

    def __str__(self):
        return poly_str(self.to_poly())


def poly_str(p: dict, names=None) -> str:
    if not p:
        return "0"
    terms = []
    for e in sorted(p, key=lambda e: (sum(e), tuple(-x for x in e))):
        v = p[e]
        n = len(e)
        vs = names or (["x"] if n == 1 else [f"x{i + 1}" for i in range(n)])
        mon = "*".join(f"{vs[i]}^{a}" if a > 1 else vs[i] for i, a in enumerate(e) if a)
        coef = str(v)
        if mon:
            terms.append(mon if v == 1 else f"-{mon}" if v == -1 else f"{coef}*{mon}")
        else:
            terms.append(coef)
    return " + ".join(terms).replace("+ -", "- ")


def _exp_series(w, j: int) -> dict:
    """(w.x)^j / j! expanded in monomials."""
    out = {}
    for m in monomials(len(w), j):
        c = Fraction(1)
        for wi, a in zip(w, m):
            c *= Fraction(wi**a, factorial(a))
        if c:
            out[m] = c
    return out


def localize_char(k: GroupDesc, e: RepRingElem, max_degree: int) -> InvPoly:
    """Taylor expansion of the character of ``e`` at the identity, real convention."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    if e.group != k:
        from ..errors import GroupMismatchError

        raise GroupMismatchError(f"element of {e.group.name} localized on {k.name}")
    series = rep_character(e).get(k.finite.identity, {})
    p: dict = {}
    for j in range(max_degree + 1):
        for w, c in series.items():
            p = poly_add(p, poly_scale(_exp_series(w, j), c))
    return InvPoly.from_poly(k, p, max_degree)


def poly_restrict(hom: GroupHom, p: InvPoly) -> InvPoly:
    """Restriction of an invariant polynomial along ``hom``: ``q(y) = p(A y)``."""
    if p.group != hom.target:
        from ..errors import GroupMismatchError

        raise GroupMismatchError("polynomial does not live on the target of the homomorphism")
    q = poly_substitute(p.to_poly(), hom.lie_matrix, hom.source.rank)
    return InvPoly.from_poly(hom.source, q, p.max_degree)
