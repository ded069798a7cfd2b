"""Virtual representations: finitely supported integer combinations of irreducibles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..errors import GroupMismatchError
from .core import GroupDesc, char_add, char_mul, char_scale, character, decompose, label_dim, label_str
from .hom import GroupHom, restrict_label

__all__ = ["RepRingElem", "rep", "irrep", "rep_ops", "rep_restrict", "rep_character"]


@dataclass(frozen=True)
class RepRingElem:
    group: GroupDesc
    terms: tuple  # sorted ((label, coeff), ...), coeff != 0

    @classmethod
    def of(cls, group: GroupDesc, coeffs: Mapping) -> "RepRingElem":
        return cls(group, tuple(sorted((k, int(v)) for k, v in coeffs.items() if v)))

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    def __getitem__(self, label) -> int:
        return self.coeffs.get(label, 0)

    def _check(self, other: "RepRingElem"):
        if not isinstance(other, RepRingElem):
            raise TypeError(f"expected RepRingElem, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatchError(f"{self.group.name} vs {other.group.name}")

    def __add__(self, other):
        self._check(other)
        c = self.coeffs
        for k, v in other.terms:
            c[k] = c.get(k, 0) + v
        return RepRingElem.of(self.group, c)

    def __neg__(self):
        return RepRingElem(self.group, tuple((k, -v) for k, v in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return RepRingElem.of(self.group, {k: n * v for k, v in self.terms})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        self._check(other)
        if not self.terms or not other.terms:
            return RepRingElem(self.group, ())
        return RepRingElem.of(self.group, decompose(self.group, char_mul(rep_character(self), rep_character(other))))

    def dim(self) -> int:
        return sum(v * label_dim(self.group, k) for k, v in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms:
            s = label_str(self.group, k)
            parts.append(s if v == 1 else f"-{s}" if v == -1 else f"{v}*{s}")
        return " + ".join(parts).replace("+ -", "- ")


def rep(group: GroupDesc, coeffs: Mapping) -> RepRingElem:
    return RepRingElem.of(group, coeffs)


def irrep(group: GroupDesc, label) -> RepRingElem:
    character(group, label)  # validates the label
    return RepRingElem(group, ((label, 1),))


def one(group: GroupDesc) -> RepRingElem:
    lab = next(l for l, _ in _trivial(group))
    return irrep(group, lab)


def _trivial(group: GroupDesc):
    from .core import irreducibles

    for lab, d in irreducibles(group, 0 if group.rank else None):
        c = character(group, lab)
        if d == 1 and all(s == {tuple(0 for _ in range(group.rank)): 1} for s in c.values()):
            yield lab, d


def rep_character(e: RepRingElem) -> dict:
    out: dict = {}
    for k, v in e.terms:
        out = char_add(out, char_scale(character(e.group, k), v))
    return out


def rep_ops(a: RepRingElem, b: RepRingElem, op: str = "tensor") -> RepRingElem:
    """Sum, difference or tensor product of two elements of the same ring."""
    if op in ("+", "sum", "add"):
        return a + b
    if op in ("-", "diff", "sub"):
        return a - b
    if op in ("*", "tensor", "mul"):
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def rep_restrict(inc: GroupHom, e: RepRingElem) -> RepRingElem:
    if e.group != inc.target:
        raise GroupMismatchError(f"element of {e.group.name} cannot be restricted along {inc.target.name} -> ...")
    out: dict = {}
    for k, v in e.terms:
        for lab, m in restrict_label(inc, k):
            out[lab] = out.get(lab, 0) + v * m
    return RepRingElem.of(inc.source, out)
