"""Equivariant cohomology, delocalized cohomology and K-theory of a resolved action."""

from __future__ import annotations

from ..cochain import cohomology, constraint_matrix
from ..errors import OutOfScopeError
from ..groups import RepRingElem
from ..linalg import Matrix, integer_kernel, invariant_factors
from ..resolution import Borel, Rep, ResolutionSpace
from .assemble import assemble, reduced_complex, require_valid
from .result import KClass, TheoryResult

__all__ = ["equivariant_cohomology", "delocalized_cohomology", "k_theory", "k_scope", "K_SCOPE_MESSAGE"]

K_SCOPE_MESSAGE = "K-theory direct model unavailable; use Chern isomorphism"
K1_NOTE = "K^1 reported as 0: odd information is carried by the odd part of H_dl"


def _check_bound(name, v):
    if not isinstance(v, int) or v < 0:
        raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


def equivariant_cohomology(s: ResolutionSpace, D: int, validate: bool = True) -> TheoryResult:
    """``dim H_G^q`` for ``q <= D``: the sum over ``2j + k = q`` of ``H^k`` of the Borel-``j`` complex."""
    _check_bound("D", D)
    if validate:
        require_valid(s)
    dims = [0] * (D + 1)
    for j in range(D // 2 + 1):
        h = cohomology(reduced_complex(s, Borel(j)).complex)
        for k in range(D - 2 * j + 1):
            dims[2 * j + k] += h[k]
    return TheoryResult("H_G", "Z", tuple(dims), s.name, (("D", D),))


def delocalized_cohomology(s: ResolutionSpace, W: int, validate: bool = True) -> TheoryResult:
    """Even and odd dimensions of the compatibility complex with windowed representation rings."""
    _check_bound("W", W)
    if validate:
        require_valid(s)
    h = cohomology(reduced_complex(s, Rep(W)).complex)
    return TheoryResult("H_dl", "Z2", (h.even, h.odd), s.name, (("W", W),))


def k_scope(s: ResolutionSpace) -> bool:
    """Every component of every piece has the integral homology of a point."""
    return s.all_contractible()


def _degree0_matrix(x) -> Matrix:
    """Stacked ``d^0`` of every block and the degree-0 face constraints."""
    rows, r0 = {}, 0
    off = x.offsets(0)
    for n, b in zip(x.names, x.blocks):
        start = off[n][0]
        d = b.d(0)
        for i, row in d.rows.items():
            rows[r0 + i] = {start + j: v for j, v in row.items()}
        r0 += d.nrows
    c = constraint_matrix(x, 0)
    for i, row in c.rows.items():
        rows[r0 + i] = dict(row)
    r0 += c.nrows
    return Matrix(r0, sum(b.dim(0) for b in x.blocks), rows)


def _kclass(s: ResolutionSpace, x, W: int, vec: dict) -> KClass:
    coeff = Rep(W)
    off = x.offsets(0)
    n_amb = sum(b.dim(0) for b in x.blocks)
    vector = tuple(int(vec.get(i, 0)) for i in range(n_amb))
    data = []
    for n in x.names:
        p = s.piece(n)
        labels = coeff.labels(p.group)
        r = len(labels)
        start = off[n][0]
        verts = p.complex.cells_of_dim(0)
        for comp in p.complex.components():
            v = next(c for c in verts if c in comp)
            i = p.complex.index(v)
            coeffs = {labels[a]: vector[start + i * r + a] for a in range(r)}
            data.append(((n, v), RepRingElem.of(p.group, coeffs)))
    return KClass(s.name, W, vector, tuple(data))


def k_theory(s: ResolutionSpace, W: int, validate: bool = True) -> TheoryResult:
    """K^0 within window ``W`` as the lattice of compatible locally constant tuples.

    Only spaces whose pieces have contractible components are modeled; there a
    resolution vector bundle is a compatible tuple of representation-ring
    elements.  The generators are an integer basis of that lattice.
    """
    _check_bound("W", W)
    if validate:
        require_valid(s)
    if not k_scope(s):
        raise OutOfScopeError(K_SCOPE_MESSAGE)
    x = assemble(s, Rep(W))
    M = _degree0_matrix(x)
    ker = integer_kernel(M)
    gens = tuple(_kclass(s, x, W, col) for col in ker.columns())
    # all ones: the generators span a saturated sublattice, so K^0 is free
    inv = invariant_factors(ker) if ker.ncols else ()
    return TheoryResult("K", "Z2", (ker.ncols, 0), s.name, (("W", W),), tuple(inv), gens, (K1_NOTE,))
