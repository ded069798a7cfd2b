"""Regenerate the shipped example spaces and corruption fixtures.

Run ``python tests/data_gen.py`` from the repository root.  The test suite
checks that the files on disk equal what this script would write.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from equires.cli import dump_space
from equires.resolution import BUILDERS, CellComplex, Face, Piece, ResolutionSpace, appendix_sphere, build_cp2_torus

DATA = Path(__file__).resolve().parents[1] / "src" / "equires" / "data"

EXAMPLES = ("appendix-sphere", "appendix-sphere-z2", "mobius", "trivial-point", "trivial-circle", "free-circle", "cp2-torus")


def boundary_squared() -> ResolutionSpace:
    """A disk whose 2-cell has boundary e1 + e2 with both edges running n -> s."""
    s = appendix_sphere()
    Z = CellComplex.build(
        [("n", 0), ("s", 0), ("e1", 1), ("e2", 1), ("f", 2)],
        {"e1": [("s", 1), ("n", -1)], "e2": [("s", 1), ("n", -1)], "f": [("e1", 1), ("e2", 1)]},
        name="Z",
    )
    top = Piece("Z", Z, s.piece("Z").group)
    return ResolutionSpace("corrupt-boundary-squared", "Z", (top,) + s.pieces[1:], s.faces, s.acting_group, s.fixed_points)


def swapped_triangle() -> ResolutionSpace:
    """CP^2 model with the first end of L01 sent to P1 instead of P0."""
    s = build_cp2_torus()
    faces = tuple(replace(f, target="P1") if f.name == "L01a" else f for f in s.faces)
    return replace(s, name="corrupt-triangle", faces=faces)


def shared_vertex() -> ResolutionSpace:
    """Sphere model whose two pole faces both sit on the vertex n."""
    s = appendix_sphere()
    fs = s.face("FS")
    faces = (s.face("FN"), Face(fs.name, fs.source, fs.target, ("n",), (("n", "p", 1),), fs.hom))
    return replace(s, name="corrupt-equal-dimension", faces=faces)


FIXTURES = {
    "boundary-squared": boundary_squared,
    "triangle": swapped_triangle,
    "equal-dimension": shared_vertex,
}


def expected_files() -> dict:
    out = {DATA / f"{n}.json": dump_space(BUILDERS[n]()) for n in EXAMPLES}
    out.update({DATA / "fixtures" / f"{n}.json": dump_space(b()) for n, b in FIXTURES.items()})
    return out


if __name__ == "__main__":
    for path, text in expected_files().items():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(path)
