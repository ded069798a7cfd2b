"""Localization, Chern character and the fixed-point push-forward."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..cochain import cocycles, constraint_matrix, pullback_complex
from ..errors import ChainMapError, LocalizationObstruction, NotCocycleError, OutOfScopeError
from ..groups import GroupDesc, InvPoly, invariant_poly_basis, irrep, localize_char, torus
from ..linalg import Matrix
from ..resolution import Borel, Rep, ResolutionSpace
from .assemble import assemble
from .compute import K_SCOPE_MESSAGE, k_scope, k_theory
from .result import DLClass, KClass, TriangleReport

__all__ = [
    "localization_matrix",
    "localization_map",
    "chern_character",
    "chern_triangle_check",
    "ab_pushforward",
    "fixed_point_classes",
    "chern_rank",
]


@lru_cache(maxsize=None)
def localization_matrix(g: GroupDesc, W: int, j: int) -> Matrix:
    """Degree-``j`` part of the localization ``R(g)_W -> S^j(g*)^g`` on fibers."""
    rep = Rep(W)
    cols = []
    for lab in rep.labels(g):
        c = localize_char(g, irrep(g, lab), j).component(j)
        cols.append({i: v for i, v in enumerate(c) if v})
    return Matrix.from_columns(cols, Borel(j).dim(g))


def _ambient_localization(s: ResolutionSpace, xr, xb, k: int, W: int, j: int) -> Matrix:
    rows = {}
    offr, offb = xr.offsets(k), xb.offsets(k)
    for n in xr.names:
        p = s.piece(n)
        L = localization_matrix(p.group, W, j)
        rr, rb = L.ncols, L.nrows
        for i in range(len(p.complex.cells_of_dim(k))):
            for a, row in L.rows.items():
                rows[offb[n][0] + i * rb + a] = {offr[n][0] + i * rr + b: v for b, v in row.items()}
    nb = sum(b.dim(k) for b in xb.blocks)
    nr = sum(b.dim(k) for b in xr.blocks)
    return Matrix(nb, nr, rows)


def _column(vec) -> Matrix:
    return Matrix.from_columns([{i: Fraction(v) for i, v in enumerate(vec) if v}], len(vec))


def _is_cocycle(x, k: int, v: Matrix) -> bool:
    amb = pullback_complex(x, check=False).ambient
    return (amb.d(k) @ v).is_zero() and (constraint_matrix(x, k) @ v).is_zero()


def localization_map(s: ResolutionSpace, cls: DLClass, D: int) -> dict:
    """Apply the fiberwise localization to a delocalized cocycle.

    Returns ``{j: coordinates}`` on the degree-``k`` cochains of the Borel-``j``
    complex for every ``2j + k <= D``; each image is checked to be a cocycle.
    """
    k, W = cls.degree, cls.W
    xr = assemble(s, Rep(W))
    v = _column(cls.vector)
    if v.nrows != sum(b.dim(k) for b in xr.blocks):
        raise NotCocycleError(f"class has {v.nrows} coordinates, expected {sum(b.dim(k) for b in xr.blocks)}")
    if not _is_cocycle(xr, k, v):
        raise NotCocycleError("input is not a cocycle of the delocalized complex")
    out = {}
    for j in range((D - k) // 2 + 1):
        xb = assemble(s, Borel(j))
        img = _ambient_localization(s, xr, xb, k, W, j) @ v
        if not _is_cocycle(xb, k, img):
            raise ChainMapError(f"localized class is not a Borel-{j} cocycle", degree=k)
        out[j] = tuple(img[i, 0] for i in range(img.nrows))
    return out


def _require_scope(s: ResolutionSpace):
    if not k_scope(s):
        raise OutOfScopeError(K_SCOPE_MESSAGE)


def chern_character(s: ResolutionSpace, k: KClass, W: int) -> DLClass:
    """On contractible pieces the Chern character copies the coefficient data."""
    _require_scope(s)
    if k.W != W:
        raise ValueError(f"class lives in window {k.W}, not {W}")
    cls = DLClass(s.name, W, 0, tuple(k.vector))
    if not _is_cocycle(assemble(s, Rep(W)), 0, _column(cls.vector)):
        raise NotCocycleError("K class is not compatible")
    return cls


def _elementwise(s: ResolutionSpace, k: KClass, j: int) -> tuple:
    """Localize each stratum datum directly and spread it over its component."""
    xb = assemble(s, Borel(j))
    off = xb.offsets(0)
    vec = [Fraction(0)] * sum(b.dim(0) for b in xb.blocks)
    for (n, v), e in k.data:
        p = s.piece(n)
        c = localize_char(p.group, e, j).component(j)
        comp = next(cc for cc in p.complex.components() if v in cc)
        r = len(c)
        for w in p.complex.cells_of_dim(0):
            if w in comp:
                i = p.complex.index(w)
                for a in range(r):
                    vec[off[n][0] + i * r + a] = c[a]
    return tuple(vec)


def chern_triangle_check(s: ResolutionSpace, D: int, W: int, basis=None) -> TriangleReport:
    """Compare localization after Ch with the directly localized Chern character.

    The first leg maps the K class through the cochain-level localization
    matrix; the second expands each stratum's virtual character on its own.
    """
    _require_scope(s)
    if basis is None:
        basis = k_theory(s, W).generators
    fails, n = [], 0
    for idx, kc in enumerate(basis):
        lhs = localization_map(s, chern_character(s, kc, W), D)
        for j in range(D // 2 + 1):
            n += 1
            rhs = _elementwise(s, kc, j)
            if lhs[j] != rhs:
                fails.append(f"generator {idx}, Borel degree {j}")
            elif not _is_cocycle(assemble(s, Borel(j)), 0, _column(rhs)):
                fails.append(f"generator {idx}, Borel degree {j}: not a cocycle")
    return TriangleReport(not fails, n, tuple(fails))


# push-forward -------------------------------------------------------------------


def _coeffs(f) -> list:
    if isinstance(f, InvPoly):
        if f.group.rank != 1:
            raise OutOfScopeError("push-forward needs circle-type data")
        p = f.to_poly()
        return [Fraction(p.get((i,), 0)) for i in range(f.max_degree + 1)]
    if isinstance(f, dict):
        top = max((e[0] for e in f), default=0)
        return [Fraction(f.get((i,), 0)) for i in range(top + 1)]
    if isinstance(f, (int, Fraction)):
        return [Fraction(f)]
    return [Fraction(c) for c in f]


def ab_pushforward(data, D: int, group: GroupDesc | None = None) -> InvPoly:
    """``sum_p f_p / (w_p x)`` for isolated fixed points of a circle action.

    ``data`` is a list of ``(f_p, w_p)`` with ``f_p`` an :class:`InvPoly` over a
    rank-one group, a coefficient list ``[c0, c1, ...]`` in ``x`` or a number.
    A surviving ``1/x`` term raises :class:`LocalizationObstruction`.
    """
    if D < 0:
        raise ValueError("D must be non-negative")
    cs, ws = [], []
    for f, w in data:
        w = int(w)
        if w == 0:
            raise ValueError("fixed point weights must be nonzero")
        cs.append(_coeffs(f))
        ws.append(w)
        if group is None and isinstance(f, InvPoly):
            group = f.group
    group = group or torus(1, "S1")
    consts = {c[0] if c else Fraction(0) for c in cs}
    if len(consts) > 1:
        raise LocalizationObstruction("localization obstruction: constant terms of the fixed point values differ")
    residue = sum((c[0] if c else 0) / Fraction(w) for c, w in zip(cs, ws))
    if residue:
        raise LocalizationObstruction(f"localization obstruction: residue {residue} at x = 0")
    p = {}
    for c, w in zip(cs, ws):
        for i, a in enumerate(c[1:], start=1):
            if a and i - 1 <= D:
                p[(i - 1,)] = p.get((i - 1,), 0) + a / Fraction(w)
    return InvPoly.from_poly(group, {e: v for e, v in p.items() if v}, D)


def fixed_point_classes(s: ResolutionSpace, D: int) -> list:
    """Push forward a basis of degree-0 Borel classes read off at the fixed points.

    Returns ``(j, values, result)`` per basis class, ``values`` being the fixed
    point polynomials in the order of ``s.fixed_points``.
    """
    if not s.fixed_points:
        raise OutOfScopeError(f"{s.name} has no fixed point data")
    for n, _ in s.fixed_points:
        p = s.piece(n)
        if p.group.rank != 1 or len(p.complex.cells) != 1:
            raise OutOfScopeError("push-forward needs isolated fixed points with circle-type isotropy")
    out = []
    for j in range(D // 2 + 1):
        pc = pullback_complex(assemble(s, Borel(j)), check=False)
        B = pc.basis_at(0) @ cocycles(pc.complex, 0)
        for col in range(B.ncols):
            v = B.select_columns([col])
            vals = []
            for n, w in s.fixed_points:
                proj = pc.block_projection(n, 0) @ v
                g = s.piece(n).group
                poly = invariant_poly_basis(g, j).poly([proj[i, 0] for i in range(proj.nrows)])
                vals.append((InvPoly.from_poly(g, poly, j), w))
            try:
                res = ab_pushforward(vals, max(j - 1, 0), group=vals[0][0].group)
            except LocalizationObstruction as exc:
                res = exc
            out.append((j, tuple(f for f, _ in vals), res))
    return out


def chern_rank(s: ResolutionSpace, W: int) -> tuple:
    """``(rank of Ch on K^0, dim H_dl^even)`` within window ``W``.

    Degree-0 delocalized cochains have no coboundaries, so the rank of the
    image in cohomology is the rank of the image vectors themselves.
    """
    from ..linalg import rank
    from .compute import delocalized_cohomology

    gens = k_theory(s, W).generators
    cols = [_column(chern_character(s, g, W).vector) for g in gens]
    r = rank(Matrix.hstack(cols, nrows=cols[0].nrows)) if cols else 0
    return r, delocalized_cohomology(s, W).even
