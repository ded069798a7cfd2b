import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from equires.cochain import is_coboundary
from equires.errors import InvalidSpaceError, LocalizationObstruction, NotCocycleError, OutOfScopeError, WindowError
from equires.groups import torus
from equires.linalg import Matrix
from equires.resolution import BUILDERS, Borel, Rep, build_free_action, build_trivial_action
from equires.theories import (
    K_SCOPE_MESSAGE,
    DLClass,
    KClass,
    ab_pushforward,
    chern_character,
    chern_rank,
    chern_triangle_check,
    delocalized_cohomology,
    equivariant_cohomology,
    fixed_point_classes,
    k_theory,
    localization_map,
    reduced_complex,
)

from data_gen import FIXTURES
from spaces import betti_oracle, random_simplices, s3, simplicial_complex, z2

seeds = st.integers(0, 10**6)


def space(name):
    return BUILDERS[name]()


# golden values ------------------------------------------------------------------------

HG = {
    "appendix-sphere": (1, 0, 2, 0, 2, 0, 2),
    "appendix-sphere-z2": (1, 0, 2, 0, 2, 0, 2),
    "mobius": (1, 1, 0, 0, 1, 1, 0),
    "trivial-point": (1, 0, 1, 0, 1, 0, 1),
    "trivial-circle": (1, 1, 1, 1, 1, 1, 1),
    "free-circle": (1, 1, 0, 0, 0, 0, 0),
    "cp2-torus": (1, 0, 3, 0, 6, 0, 9),
}


@pytest.mark.parametrize("name", sorted(HG))
def test_equivariant_cohomology_values(name):
    assert equivariant_cohomology(space(name), 6).dims == HG[name]


HDL = {
    "appendix-sphere": {0: (1, 0), 1: (5, 0), 2: (9, 0)},
    "appendix-sphere-z2": {0: (2, 0), 1: (10, 0), 2: (18, 0)},
    "mobius": {0: (1, 1), 1: (2, 2), 2: (3, 3)},
    "trivial-point": {1: (3, 0), 2: (5, 0), 3: (7, 0)},
    "trivial-circle": {1: (3, 3), 2: (5, 5)},
    "free-circle": {0: (1, 1), 2: (1, 1)},
}


@pytest.mark.parametrize("name", sorted(HDL))
def test_delocalized_cohomology_values(name):
    for W, dims in HDL[name].items():
        assert delocalized_cohomology(space(name), W).dims == dims


@pytest.mark.parametrize("name,W,rank", [
    ("appendix-sphere", 0, 1), ("appendix-sphere", 1, 5), ("appendix-sphere", 2, 9),
    ("appendix-sphere-z2", 1, 10), ("appendix-sphere-z2", 2, 18), ("trivial-point", 3, 7),
])
def test_k_theory_ranks_are_saturated(name, W, rank):
    K = k_theory(space(name), W)
    assert K.dims == (rank, 0)
    assert set(K.invariant_factors) <= {1}
    assert len(K.generators) == rank
    assert any("K^1" in n for n in K.notes)


def test_k_theory_scope():
    with pytest.raises(OutOfScopeError, match=K_SCOPE_MESSAGE):
        k_theory(space("mobius"), 1)
    with pytest.raises(OutOfScopeError):
        k_theory(space("free-circle"), 1)
    with pytest.raises(OutOfScopeError):
        k_theory(space("trivial-circle"), 1)


def test_window_outside_the_gkm_model_is_reported():
    with pytest.raises(WindowError):
        delocalized_cohomology(space("cp2-torus"), 1)
    assert delocalized_cohomology(space("cp2-torus"), 0).dims == (1, 0)


def test_invalid_spaces_are_refused():
    for build in FIXTURES.values():
        with pytest.raises(InvalidSpaceError):
            equivariant_cohomology(build(), 2)


def test_negative_bounds_are_refused():
    with pytest.raises(ValueError):
        equivariant_cohomology(space("trivial-point"), -1)
    with pytest.raises(ValueError):
        delocalized_cohomology(space("trivial-point"), -2)


# reductions ---------------------------------------------------------------------------


def _inv_dim(g, j):
    return 1 if (g.rank == 1 or j == 0) else 0


@given(seeds, st.sampled_from(["Z2", "S3", "T1"]))
def test_trivial_action_is_a_convolution(seed, gname):
    sim = random_simplices(random.Random(seed))
    g = {"Z2": z2, "S3": s3, "T1": lambda: torus(1, "S1")}[gname]()
    b = betti_oracle(sim)
    D = 5
    want = tuple(sum(_inv_dim(g, j) * (b[q - 2 * j] if q - 2 * j < len(b) else 0) for j in range(q // 2 + 1)) for q in range(D + 1))
    s = build_trivial_action(g, simplicial_complex(sim))
    assert equivariant_cohomology(s, D).dims == want


@given(seeds, st.sampled_from(["Z2", "S3", "T1"]))
def test_free_action_sees_the_quotient(seed, gname):
    sim = random_simplices(random.Random(seed))
    g = {"Z2": z2, "S3": s3, "T1": lambda: torus(1, "S1")}[gname]()
    b = betti_oracle(sim)
    s = build_free_action(g, simplicial_complex(sim))
    assert equivariant_cohomology(s, 4).dims == tuple(b[q] if q < len(b) else 0 for q in range(5))


@given(seeds)
def test_trivial_action_delocalized_is_rep_ring_times_betti(seed):
    sim = random_simplices(random.Random(seed))
    b = betti_oracle(sim)
    s = build_trivial_action(s3(), simplicial_complex(sim))
    H = delocalized_cohomology(s, 0)
    assert H.dims == (3 * sum(b[0::2]), 3 * sum(b[1::2]))


@pytest.mark.parametrize("name", ["appendix-sphere", "appendix-sphere-z2", "trivial-point"])
@pytest.mark.parametrize("W", [1, 2, 3])
def test_rank_identity(name, W):
    s = space(name)
    ch, even = chern_rank(s, W)
    assert k_theory(s, W).dims[0] == even == ch


def test_windows_grow_monotonically():
    s = space("appendix-sphere")
    evens = [delocalized_cohomology(s, W).even for W in range(5)]
    assert evens == sorted(evens)
    assert evens == [1 + 4 * W for W in range(5)]


# localization and the Chern character ---------------------------------------------------


def test_mobius_character_localizes_to_even_terms():
    s = space("mobius")
    out = localization_map(s, DLClass(s.name, 1, 0, (1, 0, 1)), 4)
    assert out == {0: (2,), 1: (0,), 2: (1,)}


def test_non_cocycle_is_rejected():
    s = space("appendix-sphere")
    n = sum(b.dim(0) for b in reduced_complex(s, Rep(1)).inputs.blocks)
    vec = tuple(int(i == 0) for i in range(n))
    with pytest.raises(NotCocycleError):
        localization_map(s, DLClass(s.name, 1, 0, vec), 4)
    with pytest.raises(NotCocycleError):
        localization_map(s, DLClass(s.name, 1, 0, (1,)), 4)


@pytest.mark.parametrize("name", ["trivial-circle", "mobius", "free-circle"])
def test_localization_sends_coboundaries_to_coboundaries(name):
    s = space(name)
    W = 1
    pc = reduced_complex(s, Rep(W))
    for col in range(pc.complex.dim(0)):
        u = pc.basis_at(0).select_columns([col])
        du = pc.ambient.d(0) @ u
        cls = DLClass(s.name, W, 1, tuple(du[i, 0] for i in range(du.nrows)))
        for j, img in localization_map(s, cls, 5).items():
            pb = reduced_complex(s, Borel(j))
            v = Matrix.from_dense([[x] for x in img], ncols=1) if img else Matrix.zeros(0, 1)
            coords = pb.from_ambient(1, v)
            assert is_coboundary(pb.complex, 1, coords)


@pytest.mark.parametrize("name", ["appendix-sphere", "appendix-sphere-z2", "trivial-point"])
def test_chern_triangle_commutes(name):
    rep = chern_triangle_check(space(name), 6, 2)
    assert rep.ok and rep.checked > 0


def test_chern_character_of_zero_is_zero():
    s = space("appendix-sphere")
    gens = k_theory(s, 1).generators
    zero = KClass(s.name, 1, tuple(0 for _ in gens[0].vector))
    assert not any(chern_character(s, zero, 1).vector)
    with pytest.raises(ValueError):
        chern_character(s, gens[0], 2)


# push-forward -------------------------------------------------------------------------


def test_pushforward_examples():
    assert ab_pushforward([(1, 1), (1, -1)], 4).to_poly() == {}
    assert ab_pushforward([([0, 1], 1), (0, -1)], 4).to_poly() == {(0,): 1}
    assert ab_pushforward([([0, 0, 1], 1), (0, -1)], 4).to_poly() == {(1,): 1}
    with pytest.raises(LocalizationObstruction):
        ab_pushforward([(1, 1), (2, -1)], 4)
    with pytest.raises(LocalizationObstruction):
        ab_pushforward([(1, 1), (1, 1)], 4)
    with pytest.raises(ValueError):
        ab_pushforward([(1, 0)], 4)


@given(st.integers(-5, 5), st.integers(-5, 5).filter(bool), st.integers(-5, 5), st.integers(1, 4))
def test_pushforward_of_a_linear_difference(c0, w, c, D):
    # f_N - f_S = c x gives c / w
    out = ab_pushforward([([c0, c], w), ([c0, 0], -w)], D)
    assert out.to_poly() == ({(0,): Fraction(c, w)} if c else {})


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=5), st.lists(st.integers(-3, 3), min_size=2, max_size=5), st.integers(1, 3))
def test_pushforward_matches_sympy(fn, fs, w):
    fs = [fn[0]] + fs[1:]
    x = sympy.symbols("x")
    pn = sum(a * x**i for i, a in enumerate(fn))
    ps = sum(a * x**i for i, a in enumerate(fs))
    ref = sympy.Poly(sympy.cancel(pn / (w * x) + ps / (-w * x)), x)
    D = 6
    want = {(i,): Fraction(str(a)) for (i,), a in ref.terms() if a != 0 and i <= D}
    assert ab_pushforward([(fn, w), (fs, -w)], D).to_poly() == want


def test_fixed_point_classes_lower_degree_by_two():
    out = fixed_point_classes(space("appendix-sphere"), 6)
    assert len(out) == 1 + 2 * 3
    for j, vals, res in out:
        assert not isinstance(res, Exception)
        p = res.to_poly()
        assert all(e[0] == j - 1 for e in p) or (j == 0 and p == {})
    # integration of x^n at the north pole alone gives x^(n-1)
    norths = [res.to_poly() for j, vals, res in out if j and str(vals[1]) == "0"]
    assert norths == [{(j - 1,): 1} for j in (1, 2, 3)]


def test_fixed_point_classes_need_fixed_points():
    with pytest.raises(OutOfScopeError):
        fixed_point_classes(space("trivial-circle"), 2)
