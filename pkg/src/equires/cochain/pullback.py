"""Pullback (equalizer) complexes and their relative versions.

Given block complexes ``X_a`` and constraints ``f_c(x_src) = g_c(x_tgt)`` with
``f_c, g_c`` chain maps into a face complex ``N_c``, the pullback is the
subcomplex of ``⊕ X_a`` cut out by all constraints.  It is realized by an
exact kernel basis in every degree together with the induced differential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..errors import NotUpwardClosedError
from ..linalg import Matrix, nullspace, solve
from .complex import ChainMap, Complex

__all__ = ["Constraint", "PullbackInputs", "PullbackComplex", "pullback_complex", "relative_complex", "direct_sum"]


@dataclass(frozen=True, eq=False)
class Constraint:
    name: str
    source: str
    target: str
    face: Complex
    src_map: ChainMap  # X_source -> face   (restriction i^*)
    tgt_map: ChainMap  # X_target -> face   (comparison psi^#)


@dataclass(frozen=True, eq=False)
class PullbackInputs:
    names: tuple
    blocks: tuple
    constraints: tuple = ()
    order: frozenset = frozenset()  # strict (a, b) pairs, b deeper than a

    @classmethod
    def star(cls, total: Complex, parts) -> "PullbackInputs":
        """``u`` on ``total`` and ``v_i`` on each base with ``i_i^* u = psi_i^# v_i``."""
        names, blocks, cons = ["total"], [total], []
        for n, (istar, base, psi) in enumerate(parts):
            nm = f"part{n}"
            names.append(nm)
            blocks.append(base)
            cons.append(Constraint(f"c{n}", "total", nm, istar.target, istar, psi))
        order = frozenset(("total", nm) for nm in names[1:])
        return cls(tuple(names), tuple(blocks), tuple(cons), order)

    @property
    def top(self) -> str:
        return self.names[0]

    def block(self, name: str) -> Complex:
        return self.blocks[self.names.index(name)]

    @cached_property
    def degrees(self) -> range:
        ks = [k for b in self.blocks for k in b.degrees]
        return range(min(ks), max(ks) + 1) if ks else range(0)

    def offsets(self, k: int) -> dict:
        out, off = {}, 0
        for n, b in zip(self.names, self.blocks):
            out[n] = (off, b.dim(k))
            off += b.dim(k)
        return out

    def check(self):
        for c in self.constraints:
            for m in (c.src_map, c.tgt_map):
                m.check()
            if c.src_map.source is not self.block(c.source) or c.tgt_map.source is not self.block(c.target):
                raise ValueError(f"constraint {c.name} maps from the wrong blocks")


def direct_sum(blocks, name: str = "") -> Complex:
    ks = sorted({k for b in blocks for k in b.degrees})
    dims = {k: sum(b.dim(k) for b in blocks) for k in ks}
    diffs = {k: Matrix.block_diag([b.d(k) for b in blocks]) for k in ks}
    return Complex.build(dims, diffs, name=name, check=False)


@dataclass(frozen=True, eq=False)
class PullbackComplex:
    inputs: PullbackInputs
    complex: Complex
    basis: tuple  # ((k, Matrix ambient x dim), ...)
    ambient: Complex
    zero_blocks: frozenset = field(default=frozenset())

    @cached_property
    def _basis(self) -> dict:
        return dict(self.basis)

    def basis_at(self, k: int) -> Matrix:
        b = self._basis.get(k)
        return b if b is not None else Matrix.zeros(self.ambient.dim(k), 0)

    def offsets(self, k: int) -> dict:
        return self.inputs.offsets(k)

    def block_projection(self, name: str, k: int) -> Matrix:
        start, size = self.offsets(k)[name]
        return Matrix(size, self.ambient.dim(k), {i: {start + i: 1} for i in range(size)})

    def to_ambient(self, k: int, coords: Matrix) -> Matrix:
        return self.basis_at(k) @ coords

    def from_ambient(self, k: int, v: Matrix) -> Matrix:
        """Coordinates of ambient vectors lying in the pullback (raises otherwise)."""
        return solve(self.basis_at(k), v)

    def contains(self, k: int, v: Matrix) -> bool:
        return (constraint_matrix(self.inputs, k, self.zero_blocks) @ v).is_zero()


def constraint_matrix(inputs: PullbackInputs, k: int, zero_blocks=frozenset()) -> Matrix:
    off = inputs.offsets(k)
    ncols = sum(b.dim(k) for b in inputs.blocks)
    rows: dict = {}
    r0 = 0
    for c in inputs.constraints:
        for m, blk, sign in ((c.src_map.at(k), c.source, 1), (c.tgt_map.at(k), c.target, -1)):
            start = off[blk][0]
            for i, row in m.rows.items():
                tgt = rows.setdefault(r0 + i, {})
                for j, v in row.items():
                    tgt[start + j] = tgt.get(start + j, 0) + sign * v
        r0 += c.face.dim(k)
    for blk in sorted(zero_blocks):
        start, size = off[blk]
        for i in range(size):
            rows[r0 + i] = {start + i: 1}
        r0 += size
    return Matrix(r0, ncols, rows)


def _realize(inputs: PullbackInputs, zero_blocks: frozenset, check: bool) -> PullbackComplex:
    if check:
        inputs.check()
    amb = direct_sum(inputs.blocks, name="ambient")
    ks = list(inputs.degrees)
    basis = {k: nullspace(constraint_matrix(inputs, k, zero_blocks)) for k in ks}
    dims = {k: basis[k].ncols for k in ks}
    diffs = {}
    for k in ks:
        if k + 1 in basis:
            diffs[k] = solve(basis[k + 1], amb.d(k) @ basis[k])
    cx = Complex.build(dims, diffs, name="pullback", check=check)
    return PullbackComplex(inputs, cx, tuple(sorted(basis.items(), key=lambda kv: kv[0])), amb, frozenset(zero_blocks))


def pullback_complex(x, parts=None, check: bool = True) -> PullbackComplex:
    """The equalizer complex of ``x`` (a :class:`PullbackInputs`).

    ``pullback_complex(total, parts)`` with ``parts`` a list of
    ``(i_star, base, psi_sharp)`` builds the star-shaped special case.
    """
    if parts is not None or isinstance(x, Complex):
        x = PullbackInputs.star(x, parts or [])
    return _realize(x, frozenset(), check)


def relative_complex(x: PullbackInputs, B, check: bool = True) -> PullbackComplex:
    """The pullback complex with the blocks in ``B`` forced to vanish.

    ``B`` must be closed upward: with a block it contains every deeper block.
    """
    B = frozenset(B)
    unknown = B - set(x.names)
    if unknown:
        raise ValueError(f"unknown blocks {sorted(unknown)}")
    if x.top in B:
        raise ValueError("the top block cannot be made relative")
    for b in B:
        for a, c in x.order:
            if a == b and c not in B:
                raise NotUpwardClosedError(f"{b} is in B but the deeper {c} is not")
    return _realize(x, B, check)
