"""Exact sparse matrices over Q and Z.

Rows are stored as ``{column: Fraction}`` dictionaries.  Elimination pivots on
the smallest available column index, so results are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Matrix",
    "rank",
    "nullspace",
    "column_space",
    "solve",
    "integer_kernel",
    "smith_normal_form",
    "invariant_factors",
    "lcm",
]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(a, b)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Sparse exact matrix.  Treat instances as immutable."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        for i, row in (rows or {}).items():
            r = {j: _frac(v) for j, v in row.items() if v}
            if r:
                clean[i] = r
        self.rows = clean

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, {i: {j: v for j, v in enumerate(r)} for i, r in enumerate(data)})

    @classmethod
    def from_columns(cls, columns: Sequence[dict], nrows: int) -> "Matrix":
        rows: dict = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        rows: dict = {}
        r0 = c0 = 0
        for b in blocks:
            for i, row in b.rows.items():
                rows[r0 + i] = {c0 + j: v for j, v in row.items()}
            r0 += b.nrows
            c0 += b.ncols
        return cls(r0, c0, rows)

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = blocks[0].ncols if blocks else 0
        rows: dict = {}
        r0 = 0
        for b in blocks:
            if b.ncols != ncols:
                raise ValueError(f"vstack: column mismatch {b.ncols} != {ncols}")
            for i, row in b.rows.items():
                rows[r0 + i] = dict(row)
            r0 += b.nrows
        return cls(r0, ncols, rows)

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = blocks[0].nrows if blocks else 0
        rows: dict = {}
        c0 = 0
        for b in blocks:
            if b.nrows != nrows:
                raise ValueError(f"hstack: row mismatch {b.nrows} != {nrows}")
            for i, row in b.rows.items():
                tgt = rows.setdefault(i, {})
                for j, v in row.items():
                    tgt[c0 + j] = v
            c0 += b.ncols
        return cls(nrows, c0, rows)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows.get(i, {}).get(j, Fraction(0))

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def column(self, j: int) -> dict:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for i, row in self.rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def is_zero(self) -> bool:
        return not self.rows

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows.values() for v in row.values())

    def nonzero_entries(self) -> Iterable[tuple[int, int, Fraction]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(len(idx), self.ncols, {k: self.rows[i] for k, i in enumerate(idx) if i in self.rows})

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        pos = {j: k for k, j in enumerate(idx)}
        rows = {}
        for i, row in self.rows.items():
            r = {pos[j]: v for j, v in row.items() if j in pos}
            if r:
                rows[i] = r
        return Matrix(self.nrows, len(idx), rows)

    # arithmetic -------------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        rows: dict = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.ncols, self.nrows, rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows: dict = {}
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if brow:
                    for j, b in brow.items():
                        acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return Matrix(self.nrows, other.ncols, rows)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, row in self.rows.items():
            s = sum((v * vec[j] for j, v in row.items() if j in vec), Fraction(0))
            if s:
                out[i] = s
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + v
        return Matrix(self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.nrows, self.ncols, {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(self.nonzero_entries())))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={sum(len(r) for r in self.rows.values())})"


# elimination -----------------------------------------------------------------


def _integer_row(row: dict) -> dict:
    """Scale a rational row to a primitive integer row."""
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    out = {j: int(v * den) for j, v in row.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _echelon(rows: Iterable[dict]) -> dict[int, dict]:
    """Fraction-free sparse row echelon form.

    Returns ``{pivot column: primitive integer row}``; each row's smallest
    column is its pivot.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        r = _integer_row(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                break
            a, b = p[c], r[c]
            new = {j: a * v for j, v in r.items()}
            for j, v in p.items():
                new[j] = new.get(j, 0) - b * v
            r = {j: v for j, v in new.items() if v}
            if r:
                g = 0
                for v in r.values():
                    g = gcd(g, v)
                if g > 1:
                    r = {j: v // g for j, v in r.items()}
    return pivots


def rank(m: Matrix) -> int:
    if m.is_zero():
        return 0
    return len(_echelon(m.rows.values()))


def _rref(m: Matrix) -> list[tuple[int, dict]]:
    """Reduced row echelon form over Q as ``[(pivot, row)]`` sorted by pivot."""
    piv = _echelon(m.rows.values())
    order = sorted(piv)
    red: dict[int, dict] = {}
    for c in reversed(order):
        row = {j: Fraction(v, piv[c][c]) for j, v in piv[c].items()}
        for c2 in list(row):
            if c2 != c and c2 in red:
                f = row.get(c2, 0)
                if not f:
                    continue
                for j, v in red[c2].items():
                    row[j] = row.get(j, 0) - f * v
                row = {j: v for j, v in row.items() if v}
        red[c] = row
    return [(c, red[c]) for c in order]


def nullspace(m: Matrix) -> Matrix:
    """Basis of ``{x : m x = 0}`` as the columns of the returned matrix."""
    rr = _rref(m)
    pivset = {c for c, _ in rr}
    free = [j for j in range(m.ncols) if j not in pivset]
    fpos = {j: k for k, j in enumerate(free)}
    rows: dict = {}
    for j in free:
        rows.setdefault(j, {})[fpos[j]] = Fraction(1)
    for c, row in rr:
        for j, v in row.items():
            if j != c:
                rows.setdefault(c, {})[fpos[j]] = -v
    return Matrix(m.ncols, len(free), rows)


def column_space(m: Matrix) -> Matrix:
    """A basis of the column space, in reduced echelon form (columns)."""
    rr = _rref(m.T)
    cols = [row for _, row in rr]
    return Matrix.from_columns(cols, m.nrows)


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Return ``x`` with ``a @ x == b``; raise ``ValueError`` if inconsistent.

    When ``a`` has dependent columns the solution with free variables set to
    zero is returned.
    """
    if a.nrows != b.nrows:
        raise ValueError("solve: row mismatch")
    aug = Matrix.hstack([a, b])
    rr = _rref(aug)
    n = a.ncols
    rows: dict = {}
    for c, row in rr:
        if c >= n:
            raise ValueError("solve: inconsistent system")
        r = {j - n: v for j, v in row.items() if j >= n}
        if r:
            rows[c] = r
    return Matrix(n, b.ncols, rows)


# integer algorithms ------------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _pair(a: int, b: int) -> tuple[int, int, int]:
    # plain elimination when a divides b, so the pivot only ever shrinks
    if b % a == 0:
        return a, 1, 0
    return _xgcd(a, b)


def _dense_int(m: Matrix) -> list[list[int]]:
    if not m.is_integral():
        raise ValueError("integer algorithm called on a non-integral matrix")
    out = [[0] * m.ncols for _ in range(m.nrows)]
    for i, row in m.rows.items():
        for j, v in row.items():
            out[i][j] = int(v)
    return out


def integer_kernel(m: Matrix) -> Matrix:
    """Z-basis of ``{x in Z^n : m x = 0}`` (a saturated lattice), as columns.

    Unimodular column operations bring ``m`` to column echelon form; the
    accumulated transform's columns over zero columns span the kernel.
    """
    a = _dense_int(m)
    nr, nc = m.nrows, m.ncols
    cols = [[a[i][j] for i in range(nr)] for j in range(nc)]
    v = [[1 if i == j else 0 for i in range(nc)] for j in range(nc)]
    piv = 0
    for i in range(nr):
        if piv >= nc:
            break
        for j in range(piv + 1, nc):
            if cols[j][i] == 0:
                continue
            x, y = cols[piv][i], cols[j][i]
            if x == 0:
                cols[piv], cols[j] = cols[j], cols[piv]
                v[piv], v[j] = v[j], v[piv]
                continue
            g, s, t = _xgcd(x, y)
            p, q = x // g, y // g
            cp, cj = cols[piv], cols[j]
            vp, vj = v[piv], v[j]
            cols[piv] = [s * u + t * w for u, w in zip(cp, cj)]
            cols[j] = [-q * u + p * w for u, w in zip(cp, cj)]
            v[piv] = [s * u + t * w for u, w in zip(vp, vj)]
            v[j] = [-q * u + p * w for u, w in zip(vp, vj)]
        if cols[piv][i] != 0:
            piv += 1
    kern = [v[j] for j in range(nc) if not any(cols[j])]
    kern = [[-x for x in k] if next(x for x in k if x) < 0 else k for k in kern]
    basis = [{i: x for i, x in enumerate(col) if x} for col in kern]
    return Matrix.from_columns(basis, nc)


def smith_normal_form(m: Matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, S, V)`` with ``U m V = S`` diagonal, divisibility ordered."""
    s = _dense_int(m)
    nr, nc = m.nrows, m.ncols
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while t < min(nr, nc):
        nz = [(abs(s[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if s[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, nr):
                if s[i][t]:
                    g, x, y = _pair(s[t][t], s[i][t])
                    a, b = s[t][t] // g, s[i][t] // g
                    rt, ri = s[t], s[i]
                    s[t] = [x * p + y * q for p, q in zip(rt, ri)]
                    s[i] = [-b * p + a * q for p, q in zip(rt, ri)]
                    ut, ui = u[t], u[i]
                    u[t] = [x * p + y * q for p, q in zip(ut, ui)]
                    u[i] = [-b * p + a * q for p, q in zip(ut, ui)]
            for j in range(t + 1, nc):
                if s[t][j]:
                    done = False
                    g, x, y = _pair(s[t][t], s[t][j])
                    a, b = s[t][t] // g, s[t][j] // g
                    for row in s:
                        p, q = row[t], row[j]
                        row[t], row[j] = x * p + y * q, -b * p + a * q
                    for row in v:
                        p, q = row[t], row[j]
                        row[t], row[j] = x * p + y * q, -b * p + a * q
            if done:
                # divisibility: fold in any entry not divisible by the pivot
                bad = [(i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if s[i][j] % s[t][t]]
                if bad:
                    i, _ = bad[0]
                    s[t] = [p + q for p, q in zip(s[t], s[i])]
                    u[t] = [p + q for p, q in zip(u[t], u[i])]
                    done = False
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, s, v


def invariant_factors(m: Matrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith normal form."""
    if m.nrows == 0 or m.ncols == 0:
        return ()
    _, s, _ = smith_normal_form(m)
    return tuple(s[i][i] for i in range(min(m.nrows, m.ncols)) if s[i][i])
