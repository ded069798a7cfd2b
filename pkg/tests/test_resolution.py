from dataclasses import replace

import pytest

from equires.errors import FlatnessError
from equires.groups import cyclic, finite_group, torus, trivial_group
from equires.linalg import Matrix
from equires.resolution import (
    BUILDERS,
    Borel,
    CellComplex,
    Face,
    Rep,
    appendix_sphere,
    borel_system,
    build_free_action,
    build_mobius_example,
    circle,
    comparison_map,
    interval,
    polygon,
    rep_system,
    twisted_system,
    validate_resolution,
)

from data_gen import FIXTURES


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_builders_validate(name):
    rep = validate_resolution(BUILDERS[name]())
    assert rep.ok, str(rep)


def test_cell_complex_basics():
    c = circle(3)
    assert c.betti() == [1, 1]
    assert c.is_regular()
    assert not circle(1).is_regular()
    assert polygon(6).betti() == [1, 0, 0]
    assert interval().components_acyclic()
    d = c.boundary_matrix(1)
    assert d.shape == (3, 3)


def test_boundary_squared_is_reported_with_cells():
    rep = validate_resolution(FIXTURES["boundary-squared"]())
    assert not rep.ok
    assert "boundary-squared" in rep.codes()
    assert {"f", "n"} <= rep.cells()


@pytest.mark.parametrize("fixture,code,cell", [
    ("triangle", "ifs-triangle", "v1"),
    ("equal-dimension", "ifs-equal-base-dimension", "n"),
])
def test_fixture_codes(fixture, code, cell):
    rep = validate_resolution(FIXTURES[fixture]())
    assert code in rep.codes()
    assert cell in rep.cells()


def test_dangling_face_cell():
    s = appendix_sphere()
    fn = s.face("FN")
    bad = replace(s, faces=(Face(fn.name, fn.source, fn.target, ("x",), (("x", "p", 1),), fn.hom), s.face("FS")))
    rep = validate_resolution(bad)
    assert "dangling-cell" in rep.codes()


def test_face_onto_a_non_subcomplex():
    s = appendix_sphere()
    fn = s.face("FN")
    # the open edge alone is not closed
    bad = replace(s, faces=(Face(fn.name, fn.source, fn.target, ("e",), (("e", "p", 1),), fn.hom), s.face("FS")))
    assert not validate_resolution(bad).ok


def test_mobius_transports():
    s = build_mobius_example()
    assert borel_system(s, "Z", 1).transport("e0", 0) == Matrix.from_dense([[-1]])
    assert borel_system(s, "Z", 2).transport("e0", 0) == Matrix.from_dense([[1]])
    R = rep_system(s, "Z", 1)
    assert R.basis == ("z^-1", "z^0", "z^1")
    assert R.transport("e0", 0) == Matrix.from_dense([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


@pytest.mark.parametrize("W", [0, 1, 2])
def test_fiber_dimensions(W):
    T = torus(1)
    assert Rep(W).dim(T) == 2 * W + 1
    assert Rep(W).dim(trivial_group()) == 1
    z2 = finite_group(cyclic(2), "Z2")
    assert Rep(W).dim(z2) == 2
    assert Borel(W).dim(T) == 1
    assert Borel(W).dim(z2) == (1 if W == 0 else 0)


def test_free_action_borel_coefficients_are_rank_one_in_degree_zero():
    s = build_free_action(finite_group(cyclic(2), "Z2"), circle(1, name="Z"))
    assert borel_system(s, "Z", 0).rank == 1
    assert borel_system(s, "Z", 1).rank == 0


def test_sphere_comparison_maps_are_chain_maps():
    s = appendix_sphere()
    for face in s.faces:
        for coeff in (Borel(0), Borel(1), Rep(0), Rep(1), Rep(2)):
            cm = comparison_map(s, face, coeff)
            assert cm.chain_map_issues() == []
    # restriction of a circle character to the trivial group is its dimension
    cm = comparison_map(s, s.face("FN"), Rep(1))
    assert cm.matrix(0) == Matrix.from_dense([[1, 1, 1]])


def test_order_and_upward_closure():
    s = appendix_sphere()
    assert s.is_acyclic()
    assert s.upward_closed({"N"}) and s.upward_closed({"N", "S"}) and s.upward_closed(set())
    assert not s.upward_closed({"Z"})
    assert s.all_contractible()
    assert not build_mobius_example().all_contractible()


def test_non_flat_system_is_detected():
    disk = CellComplex.build(
        [("a", 0), ("b", 0), ("c", 0), ("ab", 1), ("bc", 1), ("ca", 1), ("f", 2)],
        {"ab": [("b", 1), ("a", -1)], "bc": [("c", 1), ("b", -1)], "ca": [("a", 1), ("c", -1)],
         "f": [("ab", 1), ("bc", 1), ("ca", 1)]},
    )
    L = twisted_system(disk, 1, {("ab", 0): [[-1]]})
    with pytest.raises(FlatnessError):
        L.check_flat()
    ok = twisted_system(disk, 1, {})
    ok.check_flat()


def test_interval_restriction_keeps_transports():
    c = interval()
    L = twisted_system(c, 1, {("e", 0): [[-1]]})
    sub = c.subcomplex(["v0"])
    assert L.restrict(sub).transports == ()
