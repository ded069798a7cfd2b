"""Finite groups with rational character tables.

Elements are the integers ``0..order-1``; the table ``mul[a][b]`` is the index
of the product ``a*b``.  Characters are stored elementwise.  Labels whose
complex characters are not rational are grouped into Galois orbits, so the
``norm`` of a row is the number of complex irreducibles it bundles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product as iproduct
from math import gcd

from ..errors import InvalidGroupError

__all__ = [
    "FiniteGroup",
    "ramanujan",
    "mobius",
    "divisors",
    "totient",
    "cyclic",
    "dihedral",
    "symmetric",
    "trivial_finite",
    "direct_product",
]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n: int) -> int:
    res, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def ramanujan(d: int, k: int) -> int:
    """Sum of the k-th powers of the primitive d-th roots of unity."""
    g = gcd(d, k)
    return sum(mobius(d // a) * a for a in divisors(g))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    mul: tuple[tuple[int, ...], ...]
    char_names: tuple[str, ...]
    chars: tuple[tuple[Fraction, ...], ...]
    spec: tuple = ("explicit",)
    # optional element names, used for display and serialization only
    element_names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        self._verify()

    # basic structure -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.mul)

    @cached_property
    def identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.mul[e][a] == a and self.mul[a][e] == a for a in range(n)):
                return e
        raise InvalidGroupError(f"{self.name}: no identity element")

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        inv = []
        for a in range(self.order):
            hits = [b for b in range(self.order) if self.mul[a][b] == e]
            if len(hits) != 1 or self.mul[hits[0]][a] != e:
                raise InvalidGroupError(f"{self.name}: element {a} has no two-sided inverse")
            inv.append(hits[0])
        return tuple(inv)

    def conj(self, r: int, f: int) -> int:
        """r^-1 f r"""
        return self.mul[self.mul[self.inverse[r]][f]][r]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        x = self.identity
        for _ in range(k):
            x = self.mul[x][a]
        return x

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.conj(r, a) for r in range(self.order)})
            seen.update(cls)
            out.append(tuple(cls))
        return tuple(out)

    @cached_property
    def rational_classes(self) -> tuple[tuple[int, ...], ...]:
        """Elements generating conjugate cyclic subgroups."""
        seen: set[int] = set()
        out = []
        for a in range(self.order):
            if a in seen:
                continue
            n = self.element_order(a)
            gens = {self.power(a, k) for k in range(1, n + 1) if gcd(k, n) == 1}
            cls = sorted({self.conj(r, g) for r in range(self.order) for g in gens})
            seen.update(cls)
            out.append(tuple(cls))
        return tuple(out)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(row[self.identity]) for row in self.chars)

    def inner(self, a, b) -> Fraction:
        return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0)) / self.order

    @cached_property
    def norms(self) -> tuple[int, ...]:
        return tuple(int(self.inner(r, r)) for r in self.chars)

    # verification ------------------------------------------------------------

    def _verify(self):
        n = self.order
        if n == 0 or any(len(row) != n for row in self.mul):
            raise InvalidGroupError(f"{self.name}: multiplication table is not square")
        if any(not (0 <= x < n) for row in self.mul for x in row):
            raise InvalidGroupError(f"{self.name}: table entry out of range")
        for a in range(n):
            for b in range(n):
                ab = self.mul[a][b]
                for c in range(n):
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]]:
                        raise InvalidGroupError(f"{self.name}: not associative at ({a},{b},{c})")
        self.inverse  # noqa: B018 - raises when inverses are missing
        if len(self.chars) != len(self.char_names):
            raise InvalidGroupError(f"{self.name}: {len(self.chars)} characters but {len(self.char_names)} names")
        for i, row in enumerate(self.chars):
            if len(row) != n:
                raise InvalidGroupError(f"{self.name}: character {self.char_names[i]} has wrong length")
            for cls in self.classes:
                if len({row[c] for c in cls}) != 1:
                    raise InvalidGroupError(f"{self.name}: character {self.char_names[i]} is not a class function")
            if row[self.identity] <= 0:
                raise InvalidGroupError(f"{self.name}: character {self.char_names[i]} has non-positive degree")
        for i, a in enumerate(self.chars):
            for j, b in enumerate(self.chars):
                v = self.inner(a, b)
                if i != j and v != 0:
                    raise InvalidGroupError(
                        f"{self.name}: characters {self.char_names[i]} and {self.char_names[j]} are not orthogonal"
                    )
                if i == j and (v.denominator != 1 or v < 1):
                    raise InvalidGroupError(f"{self.name}: character {self.char_names[i]} has norm {v}")
        # each row bundles `norm` complex irreducibles of equal degree
        total = sum(Fraction(d * d, m) for d, m in zip(self.dims, self.norms))
        if total != n:
            raise InvalidGroupError(f"{self.name}: degrees do not account for the group order ({total} != {n})")
        if len(self.chars) != len(self.rational_classes):
            raise InvalidGroupError(
                f"{self.name}: {len(self.chars)} rational characters but {len(self.rational_classes)} rational classes"
            )

    # identity for caching / equality ----------------------------------------

    @cached_property
    def key(self):
        return (self.name, self.mul, self.chars)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


# built-in tables --------------------------------------------------------------


def _fr(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def trivial_finite() -> FiniteGroup:
    return FiniteGroup("1", ((0,),), ("triv",), _fr([[1]]), spec=("trivial",))


def cyclic(n: int) -> FiniteGroup:
    """Z_n with one rational character per divisor d (values are Ramanujan sums)."""
    if n < 1:
        raise InvalidGroupError("cyclic group order must be positive")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    ds = divisors(n)
    names = []
    for d in ds:
        if d == 1:
            names.append("triv")
        elif d == 2 and n == 2:
            names.append("sgn")
        else:
            names.append(f"c{d}")
    chars = _fr([[ramanujan(d, k) for k in range(n)] for d in ds])
    return FiniteGroup(f"Z{n}", mul, tuple(names), chars, spec=("cyclic", n))


def dihedral(n: int) -> FiniteGroup:
    """D_n of order 2n; element r^k s^e has index k + n*e."""
    if n < 2:
        raise InvalidGroupError("dihedral group needs n >= 2")

    def idx(k, e):
        return (k % n) + n * (e % 2)

    mul = []
    for a in range(2 * n):
        ka, ea = a % n, a // n
        row = []
        for b in range(2 * n):
            kb, eb = b % n, b // n
            row.append(idx(ka + (-1) ** ea * kb, ea + eb))
        mul.append(tuple(row))
    names = ["triv", "sgn"]
    rows = [[1] * (2 * n), [(-1) ** (a // n) for a in range(2 * n)]]
    if n % 2 == 0:
        names += ["rsgn", "rsgn*sgn"]
        rows.append([(-1) ** (a % n) for a in range(2 * n)])
        rows.append([(-1) ** (a % n + a // n) for a in range(2 * n)])
    for d in divisors(n):
        if d >= 3:
            names.append(f"rho{d}")
            rows.append([ramanujan(d, a % n) if a < n else 0 for a in range(2 * n)])
    return FiniteGroup(f"D{n}", tuple(mul), tuple(names), _fr(rows), spec=("dihedral", n))


def _cycle_type(p) -> tuple[int, ...]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


_S3 = {
    "triv": {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
    "sgn": {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
    "std": {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
}

_S4 = {
    "triv": {(1, 1, 1, 1): 1, (2, 1, 1): 1, (2, 2): 1, (3, 1): 1, (4,): 1},
    "sgn": {(1, 1, 1, 1): 1, (2, 1, 1): -1, (2, 2): 1, (3, 1): 1, (4,): -1},
    "two": {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0},
    "std": {(1, 1, 1, 1): 3, (2, 1, 1): 1, (2, 2): -1, (3, 1): 0, (4,): -1},
    "std*sgn": {(1, 1, 1, 1): 3, (2, 1, 1): -1, (2, 2): -1, (3, 1): 0, (4,): 1},
}


def symmetric(n: int) -> FiniteGroup:
    """S_3 or S_4 as permutation groups; element 0 is the identity."""
    tables = {3: _S3, 4: _S4}
    if n not in tables:
        raise InvalidGroupError(f"no built-in character table for S{n}")
    perms = sorted(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(pos[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    tab = tables[n]
    names = tuple(tab)
    chars = _fr([[tab[nm][_cycle_type(p)] for p in perms] for nm in names])
    enames = tuple("".join(str(x) for x in p) for p in perms)
    return FiniteGroup(f"S{n}", mul, names, chars, spec=("symmetric", n), element_names=enames)


def direct_product(groups) -> FiniteGroup:
    """Direct product; element index is mixed radix with the first factor most significant."""
    groups = list(groups)
    if not groups:
        return trivial_finite()
    if len(groups) == 1:
        return groups[0]
    orders = [g.order for g in groups]
    elems = list(iproduct(*[range(o) for o in orders]))
    pos = {e: i for i, e in enumerate(elems)}
    mul = tuple(
        tuple(pos[tuple(g.mul[x][y] for g, x, y in zip(groups, a, b))] for b in elems) for a in elems
    )
    names, chars = [], []
    for combo in iproduct(*[range(len(g.chars)) for g in groups]):
        names.append("(" + ",".join(g.char_names[i] for g, i in zip(groups, combo)) + ")")
        row = []
        for e in elems:
            v = Fraction(1)
            for g, i, x in zip(groups, combo, e):
                v *= g.chars[i][x]
            row.append(v)
        chars.append(tuple(row))
    name = "x".join(g.name for g in groups)
    return FiniteGroup(name, mul, tuple(names), tuple(chars), spec=("product",) + tuple(g.spec for g in groups))
