"""Fixed vectors of a finite group acting linearly on Q^n."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import InconsistentActionError
from ..linalg import Matrix, column_space, integer_kernel, nullspace
from .finite import FiniteGroup

__all__ = ["finite_invariants", "close_action"]


def _as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix.from_dense(m)


def close_action(group: FiniteGroup, generators: Mapping[int, object]) -> dict:
    """Extend matrices given on generating elements to the whole group.

    Raises ``InconsistentActionError`` when two words for the same element
    produce different matrices, i.e. a relation of the group is violated.
    """
    gens = {g: _as_matrix(m) for g, m in generators.items()}
    if not gens:
        raise InconsistentActionError("no generators given")
    n = next(iter(gens.values())).nrows
    for g, m in gens.items():
        if m.shape != (n, n):
            raise InconsistentActionError(f"matrix of element {g} is not {n}x{n}")
    rho = {group.identity: Matrix.identity(n)}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g, m in gens.items():
                b = group.mul[a][g]
                val = rho[a] @ m
                if b in rho:
                    if rho[b] != val:
                        raise InconsistentActionError(f"generator matrices violate a relation at element {b}")
                else:
                    rho[b] = val
                    nxt.append(b)
        frontier = nxt
    # recheck the relations between closed-up elements and generators
    for a, ma in rho.items():
        for g, m in gens.items():
            if rho.get(group.mul[a][g]) != ma @ m:
                raise InconsistentActionError(f"generator matrices violate a relation at element {group.mul[a][g]}")
    return rho


def finite_invariants(group: FiniteGroup, generators: Mapping[int, object], method: str = "kernel") -> Matrix:
    """Basis (as columns) of the vectors fixed by every group element.

    ``method="average"`` returns the column space of the Reynolds projector;
    ``method="kernel"`` returns the kernel of the stacked ``rho(g) - I`` over the
    generators, saturated over Z when all matrices are integral.
    """
    rho = close_action(group, generators)
    n = next(iter(rho.values())).nrows
    if method == "average":
        acc = Matrix.zeros(n, n)
        for m in rho.values():
            acc = acc + m
        return column_space(acc.scale(Fraction(1, len(rho))))
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    stacked = Matrix.vstack([_as_matrix(m) - Matrix.identity(n) for m in generators.values()], ncols=n)
    if stacked.is_integral():
        return integer_kernel(stacked)
    return nullspace(stacked)
