"""Builders for standard resolved actions."""

from __future__ import annotations

from fractions import Fraction

from ..errors import InvalidGroupError
from ..groups import (
    GroupDesc,
    GroupHom,
    SubgroupInclusion,
    cyclic,
    finite_group,
    o2,
    product,
    torus,
    trivial_group,
    trivial_inclusion,
)
from .cells import CellComplex, circle, interval, point, polygon
from .space import Face, Piece, ResolutionSpace

__all__ = [
    "build_sphere_rotation",
    "build_trivial_action",
    "build_free_action",
    "build_mobius_example",
    "build_cp2_torus",
    "appendix_sphere",
    "appendix_sphere_z2",
    "negation",
    "BUILDERS",
]


def _zero(n):
    return tuple(Fraction(0) for _ in range(n))


def _default_inclusion(g: GroupDesc, k: GroupDesc) -> SubgroupInclusion:
    if k.rank == 0 and k.finite.order == 1:
        return trivial_inclusion(k, g, name=f"{k.name}<{g.name}")
    if g.kind == "product" and len(g.factors) == 2 and g.factors[0].rank == 1 and g.factors[1] == k:
        # g = S^1 x k with k the second factor
        n = g.rank
        A = tuple(tuple(int(i == j + 1) for j in range(k.rank)) for i in range(n))
        fm = tuple((_zero(n), f) for f in range(k.finite.order))
        return SubgroupInclusion(k, g, A, fm, name=f"{k.name}<{g.name}")
    raise InvalidGroupError(f"no default inclusion of {k.name} into {g.name}; pass one explicitly")


def build_sphere_rotation(g: GroupDesc, k: GroupDesc, inc: GroupHom | None = None, name: str = "") -> ResolutionSpace:
    """Quotient model of a circle-type rotation of the 2-sphere.

    ``k`` is the principal isotropy (normal, with ``g/k`` a circle); the poles
    have isotropy ``g``.  The quotient is an interval ``n --e--> s`` whose
    endpoints fiber over the two pole strata.
    """
    inc = inc or _default_inclusion(g, k)
    if inc.source != k or inc.target != g:
        raise InvalidGroupError("inclusion must map k into g")
    if g.rank != k.rank + 1 or g.finite.order != k.finite.order:
        raise InvalidGroupError(f"{g.name}/{k.name} is not a circle")
    if not isinstance(inc, SubgroupInclusion):
        inc = SubgroupInclusion(inc.source, inc.target, inc.lie_matrix, inc.finite_map, inc.name)
    Z = interval("n", "s", "e", name="Z")
    pN = point("p")
    top = Piece("Z", Z, k)
    faces = (
        Face("FN", "Z", "N", ("n",), (("n", "p", 1),), inc),
        Face("FS", "Z", "S", ("s",), (("s", "p", 1),), inc),
    )
    return ResolutionSpace(
        name or f"sphere-{g.name}-{k.name}",
        "Z",
        (top, Piece("N", pN, g), Piece("S", pN, g)),
        faces,
        acting_group=g,
        fixed_points=(("N", 1), ("S", -1)),
    )


def appendix_sphere() -> ResolutionSpace:
    """Rotation of the sphere about the z-axis: G = S^1, principal isotropy trivial."""
    return build_sphere_rotation(torus(1, "S1"), trivial_group(), name="appendix-sphere")


def appendix_sphere_z2() -> ResolutionSpace:
    """The same rotation for G = S^1 x Z_2 with Z_2 acting trivially."""
    z2 = finite_group(cyclic(2), "Z2")
    g = product(torus(1, "S1"), z2, name="S1xZ2")
    return build_sphere_rotation(g, z2, name="appendix-sphere-z2")


def build_trivial_action(g: GroupDesc, x: CellComplex, name: str = "") -> ResolutionSpace:
    return ResolutionSpace(name or f"trivial-{g.name}", "Z", (Piece("Z", x, g),), acting_group=g)


def build_free_action(g: GroupDesc, z: CellComplex, name: str = "") -> ResolutionSpace:
    """Free action: the quotient ``z`` with trivial isotropy everywhere."""
    return ResolutionSpace(name or f"free-{g.name}", "Z", (Piece("Z", z, trivial_group()),), acting_group=g)


def negation(k: GroupDesc, name: str = "neg") -> GroupHom:
    """Inversion on a torus, an automorphism."""
    if k.kind != "torus":
        raise InvalidGroupError("negation is defined here for tori only")
    n = k.rank
    A = tuple(tuple(-int(i == j) for j in range(n)) for i in range(n))
    return GroupHom(k, k, A, ((_zero(n), 0),), name)


def build_mobius_example() -> ResolutionSpace:
    """S^1 ⋊ Z_2 acting on the double cover of a circle, unique isotropy S^1.

    The quotient is the one-vertex circle; going once around applies the
    conjugation z -> z^-1 of the isotropy circle.
    """
    K = torus(1, "S1")
    conj = negation(K, "conj")
    top = Piece("Z", circle(1, name="Z"), K, twists=((("e0", 0), (conj,)),))
    return ResolutionSpace("mobius", "Z", (top,), acting_group=o2())


def build_cp2_torus() -> ResolutionSpace:
    """T^2 acting on CP^2 by [z0 : t1 z1 : t2 z2].

    The resolved quotient is a hexagon: three long edges fiber identically over
    the interval strata of the coordinate lines (circle isotropy), three short
    edges collapse onto the fixed points.  Interval endpoints fiber over the
    fixed points, which gives the commuting triangles at the hexagon vertices.
    """
    T2 = torus(2, "T2")
    e = trivial_group()
    Z = polygon(6, name="Z")
    # circle isotropy of the lines through (p0,p1), (p1,p2), (p2,p0)
    dirs = {"L01": (0, 1), "L12": (1, 1), "L20": (1, 0)}
    circ = {k: torus(1, f"K{k[1:]}") for k in dirs}
    incl = {
        k: SubgroupInclusion(circ[k], T2, tuple((d,) for d in dirs[k]), ((_zero(2), 0),), f"{circ[k].name}<T2")
        for k in dirs
    }
    pieces = [Piece("Z", Z, e)]
    for k in dirs:
        pieces.append(Piece(k, interval("a", "b", "e", name=k), circ[k]))
    for p in ("P0", "P1", "P2"):
        pieces.append(Piece(p, point("p"), T2))
    faces = []
    # hexagon edges e0..e5 from v_i to v_{i+1}: corners at even edges, lines at odd
    corner = {"e0": "P0", "e2": "P1", "e4": "P2"}
    line = {"e1": "L01", "e3": "L12", "e5": "L20"}
    ends = {"L01": ("P0", "P1"), "L12": ("P1", "P2"), "L20": ("P2", "P0")}
    for ed, p in corner.items():
        i = int(ed[1:])
        a, b = f"v{i}", f"v{(i + 1) % 6}"
        faces.append(Face(f"C{p[1]}", "Z", p, (ed, a, b), ((ed, "p", 1), (a, "p", 1), (b, "p", 1)),
                          trivial_inclusion(e, T2, name="1<T2")))
    for ed, l in line.items():
        i = int(ed[1:])
        a, b = f"v{i}", f"v{(i + 1) % 6}"
        faces.append(Face(f"N{l}", "Z", l, (ed, a, b), ((ed, "e", 1), (a, "a", 1), (b, "b", 1)),
                          trivial_inclusion(e, circ[l], name=f"1<{circ[l].name}")))
    for l, (pa, pb) in ends.items():
        faces.append(Face(f"{l}a", l, pa, ("a",), (("a", "p", 1),), incl[l]))
        faces.append(Face(f"{l}b", l, pb, ("b",), (("b", "p", 1),), incl[l]))
    return ResolutionSpace("cp2-torus", "Z", tuple(pieces), tuple(faces), acting_group=T2)


def _trivial_point():
    return build_trivial_action(torus(1, "S1"), point(), name="trivial-point")


def _trivial_circle():
    return build_trivial_action(torus(1, "S1"), circle(1, name="Z"), name="trivial-circle")


def _free_circle():
    return build_free_action(finite_group(cyclic(2), "Z2"), circle(1, name="Z"), name="free-circle")


BUILDERS = {
    "appendix-sphere": appendix_sphere,
    "appendix-sphere-z2": appendix_sphere_z2,
    "mobius": build_mobius_example,
    "trivial-point": _trivial_point,
    "trivial-circle": _trivial_circle,
    "free-circle": _free_circle,
    "cp2-torus": build_cp2_torus,
}
