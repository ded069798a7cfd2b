"""Turn a resolution space plus a coefficient system into pullback data."""

from __future__ import annotations

from functools import lru_cache

from ..cochain import ChainMap, Constraint, PullbackInputs, cochain_complex, pullback_complex
from ..errors import InvalidSpaceError
from ..resolution import ResolutionSpace, comparison_map, local_system, validate_resolution

__all__ = ["assemble", "reduced_complex", "require_valid"]


@lru_cache(maxsize=64)
def _valid(s: ResolutionSpace):
    return validate_resolution(s)


def require_valid(s: ResolutionSpace):
    rep = _valid(s)
    if not rep.ok:
        first = rep.issues[0]
        raise InvalidSpaceError(f"{s.name}: {first.code}: {first.message}", rep)
    return rep


def assemble(s: ResolutionSpace, coeff) -> PullbackInputs:
    """Blocks are twisted cochains of every piece; one constraint per face.

    A face constraint says that restricting the source cochain to the face
    cells agrees with the comparison map applied to the target cochain.
    """
    names = [s.top] + [n for n in s.names if n != s.top]
    blocks = {}
    for n in names:
        L = local_system(s, n, coeff)
        blocks[n] = cochain_complex(L.base, L, check=False)
    cons = []
    for f in s.faces:
        cm = comparison_map(s, f, coeff)
        fcx = cochain_complex(cm.face_system.base, cm.face_system, check=False)
        src_cx = s.piece(f.source).complex
        degs = range(fcx.degrees.stop) if fcx.degrees else range(0)
        rmap = ChainMap.build(blocks[f.source], fcx, {q: cm.restriction(q, src_cx) for q in degs}, check=False)
        pmap = ChainMap.build(blocks[f.target], fcx, {q: cm.matrix(q) for q in degs}, check=False)
        cons.append(Constraint(f.name, f.source, f.target, fcx, rmap, pmap))
    return PullbackInputs(tuple(names), tuple(blocks[n] for n in names), tuple(cons), s.order)


def reduced_complex(s: ResolutionSpace, coeff, check: bool = False):
    """The compatibility complex for one coefficient system."""
    return pullback_complex(assemble(s, coeff), check=check)
