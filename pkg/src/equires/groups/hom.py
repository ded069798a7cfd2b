"""Homomorphisms between supported groups and restriction of representations.

A homomorphism ``phi: K -> G`` of split extensions is given by

* ``lie_matrix`` ``A`` (``G.rank x K.rank`` integers): ``exp(x) -> exp(A x)``;
* ``finite_map[f] = (theta, f')``: the finite element ``f`` of ``K`` goes to
  ``exp(theta) f'`` with ``theta`` in ``Q^n / Z^n`` (units of full turns).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from functools import cached_property, lru_cache

from ..errors import DecompositionError, GroupMismatchError, InvalidGroupError
from .core import GroupDesc, character, decompose

__all__ = ["GroupHom", "SubgroupInclusion", "identity_hom", "trivial_inclusion", "compose", "restrict_character"]


def _mod1(v) -> tuple:
    return tuple(Fraction(x) - (Fraction(x).numerator // Fraction(x).denominator) for x in v)


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: GroupDesc
    target: GroupDesc
    lie_matrix: tuple
    finite_map: tuple  # per source F element: (theta tuple, target F element)
    name: str = ""

    def __post_init__(self):
        s, t = self.source, self.target
        A = tuple(tuple(int(x) for x in row) for row in self.lie_matrix)
        fm = tuple((_mod1(th), int(f)) for th, f in self.finite_map)
        object.__setattr__(self, "lie_matrix", A)
        object.__setattr__(self, "finite_map", fm)
        label = self.name or f"{s.name}->{t.name}"
        if len(A) != t.rank or any(len(r) != s.rank for r in A):
            raise InvalidGroupError(f"{label}: lie matrix must be {t.rank}x{s.rank}")
        if len(fm) != s.finite.order:
            raise InvalidGroupError(f"{label}: finite map needs {s.finite.order} entries")
        for th, f in fm:
            if len(th) != t.rank or not (0 <= f < t.finite.order):
                raise InvalidGroupError(f"{label}: malformed finite map entry")
        # torus part intertwines the finite actions: M_{phi f} A = A M_f
        for f, (_, fp) in enumerate(fm):
            lhs = _mm(t.action[fp], A)
            rhs = _mm(A, s.action[f])
            if lhs != rhs:
                raise InvalidGroupError(f"{label}: lie matrix does not intertwine the action of element {f}")
        # finite part: phi(f) phi(g) = exp(theta_f + M_{f'} theta_g) f'g'
        SF, TF = s.finite, t.finite
        for f in range(SF.order):
            thf, f1 = fm[f]
            for g in range(SF.order):
                thg, g1 = fm[g]
                th, h1 = fm[SF.mul[f][g]]
                M = t.action[f1]
                comb = _mod1(tuple(thf[i] + sum(M[i][k] * thg[k] for k in range(t.rank)) for i in range(t.rank)))
                if TF.mul[f1][g1] != h1 or comb != th:
                    raise InvalidGroupError(f"{label}: finite map is not multiplicative at ({f},{g})")
        if fm[SF.identity] != (tuple(Fraction(0) for _ in range(t.rank)), TF.identity):
            raise InvalidGroupError(f"{label}: identity must map to identity")

    @cached_property
    def key(self):
        return (self.source.key, self.target.key, self.lie_matrix, self.finite_map)

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GroupHom({self.name or ''} {self.source.name}->{self.target.name})"

    def is_injective(self) -> bool:
        from ..linalg import Matrix, rank

        if self.source.rank and rank(Matrix.from_dense(self.lie_matrix, self.source.rank)) != self.source.rank:
            return False
        imgs = set(self.finite_map)
        return len(imgs) == len(self.finite_map)

    def is_identity(self) -> bool:
        return self == identity_hom(self.source)


class SubgroupInclusion(GroupHom):
    """An injective homomorphism ``small -> big``."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_injective():
            raise InvalidGroupError(f"{self.name or 'inclusion'}: map {self.source.name}->{self.target.name} is not injective")

    @property
    def small(self) -> GroupDesc:
        return self.source

    @property
    def big(self) -> GroupDesc:
        return self.target


def _mm(a, b):
    n = len(a)
    m = len(b)
    p = len(b[0]) if b else 0
    if n == 0 or p == 0:
        return tuple(tuple(0 for _ in range(p)) for _ in range(n))
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def identity_hom(g: GroupDesc, name: str = "") -> GroupHom:
    A = tuple(tuple(int(i == j) for j in range(g.rank)) for i in range(g.rank))
    z = tuple(Fraction(0) for _ in range(g.rank))
    return GroupHom(g, g, A, tuple((z, f) for f in range(g.finite.order)), name or f"id_{g.name}")


def trivial_inclusion(small: GroupDesc, big: GroupDesc, name: str = "") -> SubgroupInclusion:
    """The inclusion of the trivial group (only ``small`` of order 1, rank 0 allowed)."""
    if small.rank or small.finite.order != 1:
        raise InvalidGroupError("trivial_inclusion needs the trivial group as source")
    z = tuple(Fraction(0) for _ in range(big.rank))
    return SubgroupInclusion(small, big, tuple(() for _ in range(big.rank)), ((z, big.finite.identity),), name)


def compose(second: GroupHom, first: GroupHom) -> GroupHom:
    """``second o first``."""
    if first.target != second.source:
        raise GroupMismatchError(f"cannot compose {second!r} after {first!r}")
    n, m, k = second.target.rank, first.target.rank, first.source.rank
    B, C = second.lie_matrix, first.lie_matrix
    A = tuple(tuple(sum(B[i][t] * C[t][j] for t in range(m)) for j in range(k)) for i in range(n))
    fm = []
    for th, f1 in first.finite_map:
        th2, f2 = second.finite_map[f1]
        moved = tuple(sum(B[i][k] * th[k] for k in range(len(th))) for i in range(second.target.rank))
        fm.append((tuple(a + b for a, b in zip(moved, th2)), f2))
    return GroupHom(first.source, second.target, A, tuple(fm), f"{second.name}*{first.name}")


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    """Integer coefficients (constant term first) of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv(num, list(_cyclotomic(d)))[0]
    return tuple(num)


def _polydiv(a: list, b: list):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, x in enumerate(b):
            a[k + i] -= c * x
        while a and a[-1] == 0:
            a.pop()
    return [int(x) for x in q], a


def _root_sum(terms: dict) -> Fraction:
    """Exact value of sum c * exp(2 pi i p) over {p: c}; must be rational."""
    n = 1
    for p in terms:
        n = n * p.denominator // gcd(n, p.denominator)
    poly = [Fraction(0)] * n
    for p, c in terms.items():
        poly[int(p * n) % n] += c
    _, rem = _polydiv(poly, list(_cyclotomic(n)))
    rem = rem or [Fraction(0)]
    if any(rem[1:]):
        raise DecompositionError("restriction produces a character value outside Q")
    return rem[0]


def restrict_character(hom: GroupHom, chi: dict) -> dict:
    """Pull a character of ``hom.target`` back to ``hom.source``."""
    s = hom.source
    A = hom.lie_matrix
    out = {}
    for f, (theta, fp) in enumerate(hom.finite_map):
        series: dict = {}
        for w, v in chi.get(fp, {}).items():
            phase = sum((Fraction(wi) * ti for wi, ti in zip(w, theta)), Fraction(0))
            phase -= phase.numerator // phase.denominator
            ws = tuple(sum(A[i][k] * w[i] for i in range(len(w))) for k in range(s.rank))
            t = series.setdefault(ws, {})
            t[phase] = t.get(phase, 0) + v
        vals = {ws: _root_sum(t) for ws, t in series.items()}
        out[f] = {w: v for w, v in vals.items() if v}
    return out


@lru_cache(maxsize=None)
def restrict_label(hom: GroupHom, label) -> tuple:
    """Decomposition of an irreducible of the target restricted to the source."""
    res = decompose(hom.source, restrict_character(hom, character(hom.target, label)))
    return tuple(sorted(res.items()))
