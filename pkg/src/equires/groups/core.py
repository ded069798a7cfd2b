"""Group descriptions and their characters.

Every supported group is modeled as a split extension ``T^n ⋊ F`` of a finite
group ``F`` by a torus.  ``F`` acts on the Lie algebra of ``T`` through the
integer matrices ``action[f]`` and on weights by ``f.m = action[f]^{-T} m``.

A character is stored as ``{f: {weight: coefficient}}``: for fixed ``f`` the
function ``t -> chi(t f)`` is a finite Fourier series on the torus.  All
coefficients are rational because only rational character tables are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Iterable

from ..errors import DecompositionError, InvalidGroupError, UnsupportedGroupError
from .finite import FiniteGroup, direct_product, divisors, ramanujan, trivial_finite

__all__ = [
    "GroupDesc",
    "finite_group",
    "torus",
    "product",
    "extension",
    "trivial_group",
    "irreducibles",
    "character",
    "char_add",
    "char_scale",
    "char_mul",
    "char_inner",
    "decompose",
    "label_dim",
    "label_str",
    "in_window",
]

Weight = tuple  # tuple[int, ...]
Character = dict  # {f: {weight: Fraction}}


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def _det(a) -> int:
    a = [[Fraction(x) for x in row] for row in a]
    n, det = len(a), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


@dataclass(frozen=True, eq=False)
class GroupDesc:
    kind: str  # finite | torus | product | extension
    name: str
    rank: int
    finite: FiniteGroup
    action: tuple  # per F element: rank x rank integer matrix
    factors: tuple = ()

    def __post_init__(self):
        if self.kind not in ("finite", "torus", "product", "extension"):
            raise UnsupportedGroupError(f"unsupported group kind {self.kind!r}")
        F = self.finite
        if len(self.action) != F.order:
            raise InvalidGroupError(f"{self.name}: need one action matrix per element of {F.name}")
        for f, m in enumerate(self.action):
            if len(m) != self.rank or any(len(r) != self.rank for r in m):
                raise InvalidGroupError(f"{self.name}: action matrix of element {f} has wrong shape")
            if abs(_det(m)) != 1:
                raise InvalidGroupError(f"{self.name}: action matrix of element {f} is not invertible over Z")
        if self.action[F.identity] != _identity(self.rank):
            raise InvalidGroupError(f"{self.name}: identity must act trivially")
        for a in range(F.order):
            for b in range(F.order):
                if _matmul(self.action[a], self.action[b]) != self.action[F.mul[a][b]]:
                    raise InvalidGroupError(f"{self.name}: action is not a homomorphism at ({a},{b})")

    @cached_property
    def key(self):
        return (self.kind, self.name, self.rank, self.finite.key, self.action, tuple(f.key for f in self.factors))

    def __eq__(self, other):
        return isinstance(other, GroupDesc) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GroupDesc({self.name})"

    @cached_property
    def weight_action(self) -> tuple:
        """Integer matrices W_f with f.m = W_f m, i.e. W_f = M_{f^-1}^T."""
        inv = self.finite.inverse
        out = []
        for f in range(self.finite.order):
            m = self.action[inv[f]]
            out.append(tuple(tuple(m[j][i] for j in range(self.rank)) for i in range(self.rank)))
        return tuple(out)

    def act_weight(self, f: int, w: Weight) -> Weight:
        m = self.weight_action[f]
        return tuple(sum(m[i][k] * w[k] for k in range(self.rank)) for i in range(self.rank))

    def orbit(self, w: Weight) -> list:
        return sorted({self.act_weight(f, w) for f in range(self.finite.order)})

    def stabilizer(self, w: Weight) -> tuple[int, ...]:
        return tuple(f for f in range(self.finite.order) if self.act_weight(f, w) == tuple(w))

    @property
    def is_connected(self) -> bool:
        return self.finite.order == 1

    @cached_property
    def acts_trivially(self) -> bool:
        return all(m == _identity(self.rank) for m in self.action)


# constructors ------------------------------------------------------------------


def finite_group(F: FiniteGroup, name: str | None = None) -> GroupDesc:
    return GroupDesc("finite", name or F.name, 0, F, tuple(() for _ in range(F.order)))


def trivial_group() -> GroupDesc:
    return finite_group(trivial_finite(), "1")


def torus(n: int, name: str | None = None) -> GroupDesc:
    if n < 0:
        raise InvalidGroupError("torus rank must be non-negative")
    return GroupDesc("torus", name or f"T{n}", n, trivial_finite(), (_identity(n),))


def extension(n: int, F: FiniteGroup, action, name: str | None = None) -> GroupDesc:
    """Split extension T^n ⋊ F; ``action[f]`` is the matrix of f on the Lie algebra."""
    act = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in action)
    return GroupDesc("extension", name or f"T{n}x|{F.name}", n, F, act)


def product(*groups: GroupDesc, name: str | None = None) -> GroupDesc:
    if not groups:
        raise InvalidGroupError("product of no groups")
    F = direct_product([g.finite for g in groups])
    n = sum(g.rank for g in groups)
    elems = list(iproduct(*[range(g.finite.order) for g in groups]))
    action = []
    for e in elems:
        m = [[0] * n for _ in range(n)]
        off = 0
        for g, f in zip(groups, e):
            for i in range(g.rank):
                for j in range(g.rank):
                    m[off + i][off + j] = g.action[f][i][j]
            off += g.rank
        action.append(tuple(tuple(r) for r in m))
    return GroupDesc("product", name or "x".join(g.name for g in groups), n, F, tuple(action), tuple(groups))


def _factor_elements(g: GroupDesc, f: int) -> tuple[int, ...]:
    out = []
    for h in reversed(g.factors):
        f, r = divmod(f, h.finite.order)
        out.append(r)
    return tuple(reversed(out))


def _split_weight(g: GroupDesc, w: Weight) -> list:
    out, off = [], 0
    for h in g.factors:
        out.append(tuple(w[off : off + h.rank]))
        off += h.rank
    return out


# stabilizer tables (for induced characters of extensions) ----------------------


@lru_cache(maxsize=None)
def _stab_table(g: GroupDesc, stab: tuple[int, ...]):
    """Return (names, values) with values[i][f] for f in the stabilizer."""
    F = g.finite
    if len(stab) == F.order:
        return F.char_names, tuple({f: row[f] for f in stab} for row in F.chars)
    if len(stab) == 1:
        return ("triv",), ({stab[0]: Fraction(1)},)
    gen = next((a for a in stab if F.element_order(a) == len(stab)), None)
    if gen is None:
        raise UnsupportedGroupError(
            f"{g.name}: stabilizer of order {len(stab)} is neither trivial, cyclic nor the whole group"
        )
    n = len(stab)
    exp = {F.power(gen, k): k for k in range(n)}
    names, vals = [], []
    for d in divisors(n):
        names.append("triv" if d == 1 else f"c{d}")
        vals.append({f: Fraction(ramanujan(d, exp[f])) for f in stab})
    return tuple(names), tuple(vals)


# labels -------------------------------------------------------------------------


def in_window(g: GroupDesc, label, W: int | None) -> bool:
    if W is None:
        return True
    k = g.kind
    if k == "finite":
        return True
    if k == "torus":
        return all(abs(x) <= W for x in label)
    if k == "extension":
        return all(abs(x) <= W for w in g.orbit(label[0]) for x in w)
    return all(in_window(h, l, W) for h, l in zip(g.factors, label))


def _valid_label(g: GroupDesc, label) -> bool:
    k = g.kind
    try:
        if k == "finite":
            return isinstance(label, int) and 0 <= label < len(g.finite.chars)
        if k == "torus":
            return isinstance(label, tuple) and len(label) == g.rank and all(isinstance(x, int) for x in label)
        if k == "extension":
            w, i = label
            if not (isinstance(w, tuple) and len(w) == g.rank) or g.orbit(w)[0] != w:
                return False
            names, _ = _stab_table(g, g.stabilizer(w))
            return isinstance(i, int) and 0 <= i < len(names)
        return (
            isinstance(label, tuple)
            and len(label) == len(g.factors)
            and all(_valid_label(h, l) for h, l in zip(g.factors, label))
        )
    except (TypeError, ValueError):
        return False


def irreducibles(g: GroupDesc, window: int | None = None) -> list:
    """All irreducible labels (with dimensions) inside the weight window."""
    if g.rank > 0 and (window is None or window < 0):
        raise ValueError(f"{g.name} has a torus factor; a weight window W >= 0 is required")
    return [(lab, label_dim(g, lab)) for lab in _labels(g, window)]


def _labels(g: GroupDesc, W) -> list:
    k = g.kind
    if k == "finite":
        return list(range(len(g.finite.chars)))
    if k == "torus":
        return [tuple(w) for w in iproduct(range(-W, W + 1), repeat=g.rank)]
    if k == "product":
        return [tuple(c) for c in iproduct(*[_labels(h, W) for h in g.factors])]
    out = []
    for w in iproduct(range(-W, W + 1), repeat=g.rank):
        orb = g.orbit(w)
        if orb[0] != w or not all(abs(x) <= W for v in orb for x in v):
            continue
        names, _ = _stab_table(g, g.stabilizer(w))
        out.extend((w, i) for i in range(len(names)))
    return out


def label_dim(g: GroupDesc, label) -> int:
    return int(sum(character(g, label)[g.finite.identity].values()))


def label_str(g: GroupDesc, label) -> str:
    k = g.kind
    if k == "finite":
        return g.finite.char_names[label]
    if k == "torus":
        return "z^" + ",".join(str(x) for x in label) if g.rank != 1 else f"z^{label[0]}"
    if k == "extension":
        w, i = label
        names, _ = _stab_table(g, g.stabilizer(w))
        orb = g.orbit(w)
        ws = "|".join(",".join(str(x) for x in v) for v in orb)
        return f"[{ws}]{names[i]}" if len(names) > 1 or len(orb) == 1 else f"[{ws}]"
    return "(" + ",".join(label_str(h, l) for h, l in zip(g.factors, label)) + ")"


# characters -----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _character(g: GroupDesc, label) -> tuple:
    if not _valid_label(g, label):
        raise ValueError(f"{label!r} is not an irreducible label of {g.name}")
    F = g.finite
    k = g.kind
    if k == "finite":
        row = F.chars[label]
        return tuple((f, (((), row[f]),) if row[f] else ()) for f in range(F.order))
    if k == "torus":
        return ((0, ((tuple(label), Fraction(1)),)),)
    if k == "product":
        facs = [character(h, l) for h, l in zip(g.factors, label)]
        out = []
        for f in range(F.order):
            parts = [c[x] for c, x in zip(facs, _factor_elements(g, f))]
            series: dict = {(): Fraction(1)}
            for p in parts:
                nxt: dict = {}
                for w1, a in series.items():
                    for w2, b in p.items():
                        key = w1 + w2
                        nxt[key] = nxt.get(key, 0) + a * b
                series = {w: v for w, v in nxt.items() if v}
            out.append((f, tuple(sorted(series.items()))))
        return tuple(out)
    # extension: induce weight (x) stabilizer character from T ⋊ F_m
    m, idx = label
    stab = g.stabilizer(m)
    _, vals = _stab_table(g, stab)
    sigma = vals[idx]
    stabset = set(stab)
    reps, covered = [], set()
    for r in range(F.order):
        if r in covered:
            continue
        reps.append(r)
        covered.update(F.mul[r][s] for s in stab)
    out = []
    for f in range(F.order):
        series: dict = {}
        for r in reps:
            c = F.conj(r, f)
            if c in stabset and sigma[c]:
                w = g.act_weight(r, m)
                series[w] = series.get(w, 0) + sigma[c]
        out.append((f, tuple(sorted((w, v) for w, v in series.items() if v))))
    return tuple(out)


def character(g: GroupDesc, label) -> Character:
    return {f: dict(s) for f, s in _character(g, label)}


def char_add(a: Character, b: Character) -> Character:
    out = {f: dict(s) for f, s in a.items()}
    for f, s in b.items():
        t = out.setdefault(f, {})
        for w, v in s.items():
            t[w] = t.get(w, 0) + v
    return {f: {w: v for w, v in s.items() if v} for f, s in out.items()}


def char_scale(a: Character, c) -> Character:
    return {f: {w: c * v for w, v in s.items() if c * v} for f, s in a.items()}


def char_mul(a: Character, b: Character) -> Character:
    out = {}
    for f in set(a) | set(b):
        sa, sb = a.get(f, {}), b.get(f, {})
        t: dict = {}
        for w1, x in sa.items():
            for w2, y in sb.items():
                w = tuple(p + q for p, q in zip(w1, w2))
                t[w] = t.get(w, 0) + x * y
        out[f] = {w: v for w, v in t.items() if v}
    return out


def char_inner(g: GroupDesc, a: Character, b: Character) -> Fraction:
    tot = Fraction(0)
    for f in range(g.finite.order):
        sa, sb = a.get(f, {}), b.get(f, {})
        if len(sb) < len(sa):
            sa, sb = sb, sa
        for w, v in sa.items():
            if w in sb:
                tot += v * sb[w]
    return tot / g.finite.order


def _candidates(g: GroupDesc, weights: Iterable[Weight]) -> set:
    weights = list(weights)
    k = g.kind
    if k == "finite":
        return set(range(len(g.finite.chars)))
    if k == "torus":
        return {tuple(w) for w in weights}
    if k == "extension":
        out = set()
        for w in weights:
            m = g.orbit(w)[0]
            names, _ = _stab_table(g, g.stabilizer(m))
            out.update((m, i) for i in range(len(names)))
        return out
    per = [set() for _ in g.factors]
    for w in weights:
        for i, part in enumerate(_split_weight(g, w)):
            per[i].add(part)
    cands = [_candidates(h, ws) for h, ws in zip(g.factors, per)]
    return {tuple(c) for c in iproduct(*cands)}


def decompose(g: GroupDesc, chi: Character) -> dict:
    """Write a virtual character as an integer combination of irreducibles."""
    # weights of different orbits never mix, so the union of supports over
    # all f meets every orbit that occurs with a nonzero coefficient
    support = {w for s in chi.values() for w, v in s.items() if v}
    out = {}
    for lab in sorted(_candidates(g, support)):
        c = character(g, lab)
        m = char_inner(g, chi, c) / char_inner(g, c, c)
        if m.denominator != 1:
            raise DecompositionError(f"{g.name}: multiplicity of {label_str(g, lab)} is {m}")
        if m:
            out[lab] = int(m)
    recon: Character = {}
    for lab, m in out.items():
        recon = char_add(recon, char_scale(character(g, lab), m))
    diff = char_add(recon, char_scale(chi, -1))
    if any(s for s in diff.values()):
        raise DecompositionError(f"{g.name}: character is not an integer combination of irreducibles")
    return out
