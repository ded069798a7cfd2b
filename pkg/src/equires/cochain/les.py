"""Long exact sequences of short exact sequences of complexes."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotExactError
from ..linalg import Matrix, column_space, rank, solve
from .complex import ChainMap, Complex, cocycles, cohomology, induced_rank
from .pullback import PullbackInputs, relative_complex

__all__ = ["LESReport", "les_check", "relative_les"]


@dataclass(frozen=True)
class LESReport:
    exact: bool
    rows: tuple  # per degree: (k, dim H(sub), dim H(full), dim H(quot), rank i*, rank p*, rank delta)
    failures: tuple = ()
    quotient_isomorphism: bool = False  # sub is acyclic, so H(full) = H(quot)

    def __bool__(self):
        return self.exact

    def __str__(self):
        head = "k  H(sub) H(full) H(quot)  rk i  rk p  rk d"
        lines = [head] + [f"{k:<2} {a:>6} {b:>7} {c:>7} {x:>5} {y:>5} {z:>5}" for k, a, b, c, x, y, z in self.rows]
        lines.append("exact" if self.exact else "NOT exact: " + "; ".join(self.failures))
        return "\n".join(lines)


def _connecting(sub: Complex, full: Complex, quot: Complex, i: ChainMap, p: ChainMap, k: int) -> Matrix:
    """delta: Z^k(quot) -> C^{k+1}(sub), on a basis of cocycles (as columns)."""
    Z = cocycles(quot, k)
    if Z.ncols == 0 or sub.dim(k + 1) == 0:
        return Matrix.zeros(sub.dim(k + 1), Z.ncols)
    lift = solve(p.at(k), Z)  # p x = z
    dx = full.d(k) @ lift
    return solve(i.at(k + 1), dx)  # i y = dx


def _delta_rank(sub: Complex, delta: Matrix, k1: int) -> int:
    B = sub.d(k1 - 1)
    if delta.ncols == 0:
        return 0
    return rank(Matrix.hstack([B, delta], nrows=sub.dim(k1))) - rank(B)


def les_check(sub: Complex, full: Complex, quot: Complex, i: ChainMap, p: ChainMap) -> LESReport:
    """Verify ``0 -> sub -> full -> quot -> 0`` and exactness of its long sequence."""
    i.check()
    p.check()
    degs = sorted(set(sub.degrees) | set(full.degrees) | set(quot.degrees))
    for k in degs:
        ik, pk = i.at(k), p.at(k)
        if rank(ik) != sub.dim(k):
            raise NotExactError(f"sub -> full is not injective in degree {k}")
        if rank(pk) != quot.dim(k):
            raise NotExactError(f"full -> quot is not surjective in degree {k}")
        if not (pk @ ik).is_zero():
            raise NotExactError(f"composition is nonzero in degree {k}")
        if full.dim(k) != sub.dim(k) + quot.dim(k):
            raise NotExactError(f"dimensions do not add up in degree {k}")
    hs, hf, hq = cohomology(sub), cohomology(full), cohomology(quot)
    ri = {k: induced_rank(i, k) for k in degs}
    rp = {k: induced_rank(p, k) for k in degs}
    deltas = {k: _connecting(sub, full, quot, i, p, k) for k in degs}
    rd = {k: _delta_rank(sub, deltas[k], k + 1) for k in degs}
    fails = []
    for k in degs:
        # exact at H^k(sub): ker i* = im delta_{k-1}
        if hs[k] - ri[k] != rd.get(k - 1, 0):
            fails.append(f"H^{k}(sub)")
        # exact at H^k(full): ker p* = im i*
        if hf[k] - rp[k] != ri[k]:
            fails.append(f"H^{k}(full)")
        # exact at H^k(quot): ker delta = im p*
        if hq[k] - rd[k] != rp[k]:
            fails.append(f"H^{k}(quot)")
        # compositions vanish on cohomology
        if deltas[k].ncols:
            img = i.at(k + 1) @ deltas[k]
            B = full.d(k)
            if rank(Matrix.hstack([B, img], nrows=full.dim(k + 1))) != rank(B):
                fails.append(f"i*delta != 0 in degree {k}")
    rows = tuple((k, hs[k], hf[k], hq[k], ri[k], rp[k], rd[k]) for k in degs)
    iso = all(hs[k] == 0 for k in degs)
    return LESReport(not fails, rows, tuple(fails), iso)


def relative_les(x: PullbackInputs, B, b: str) -> LESReport:
    """The sequence ``rel(B + b) -> rel(B) -> image of the b-block``.

    The quotient is realized as the image of the projection onto the cochains
    of block ``b``, so the sequence is short exact by construction.
    """
    B = frozenset(B)
    full = relative_complex(x, B)
    sub = relative_complex(x, B | {b})
    blk = x.block(b)
    degs = list(x.degrees)
    proj = {k: full.block_projection(b, k) @ full.basis_at(k) for k in degs}
    qbasis = {k: column_space(proj[k]) for k in degs}
    qdims = {k: qbasis[k].ncols for k in degs}
    qd = {k: solve(qbasis[k + 1], blk.d(k) @ qbasis[k]) for k in degs if k + 1 in qbasis}
    quot = Complex.build(qdims, qd, name=f"image({b})")
    pmap = ChainMap.build(full.complex, quot, {k: solve(qbasis[k], proj[k]) for k in degs})
    imap = ChainMap.build(sub.complex, full.complex, {k: solve(full.basis_at(k), sub.basis_at(k)) for k in degs})
    return les_check(sub.complex, full.complex, quot, imap, pmap)
