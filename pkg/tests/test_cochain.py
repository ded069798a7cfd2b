import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equires.cochain import (
    ChainMap,
    Complex,
    Constraint,
    PullbackInputs,
    cochain_complex,
    cohomology,
    les_check,
    pullback_complex,
    relative_complex,
    relative_les,
    subdivide,
    subdivide_space,
)
from equires.errors import ComplexError, NotUpwardClosedError
from equires.linalg import Matrix
from equires.resolution import BUILDERS, Borel, Rep, appendix_sphere, build_cp2_torus, circle, interval, twisted_system
from equires.theories import assemble, delocalized_cohomology, equivariant_cohomology

from spaces import betti_oracle, les_chains, random_simplices, simplicial_complex, two_strata

seeds = st.integers(0, 10**6)


def test_circle_with_trivial_and_sign_coefficients():
    c = circle(2)
    assert cohomology(cochain_complex(c)).as_list(0, 1) == [1, 1]
    sign = twisted_system(c, 1, {("e1", 0): [[-1]]})
    assert cohomology(cochain_complex(c, sign)).as_list(0, 1) == [0, 0]
    # rank two with a swap: one invariant and one anti-invariant line
    swap = twisted_system(c, 2, {("e1", 0): [[0, 1], [1, 0]]})
    assert cohomology(cochain_complex(c, swap)).as_list(0, 1) == [1, 1]


@given(seeds)
def test_cellular_cohomology_matches_sympy_betti(seed):
    sim = random_simplices(random.Random(seed))
    c = simplicial_complex(sim)
    H = cohomology(cochain_complex(c))
    assert H.as_list(0, c.dimension) == betti_oracle(sim)


@given(seeds)
def test_euler_characteristic_and_rank_nullity(seed):
    c = simplicial_complex(random_simplices(random.Random(seed)))
    X = cochain_complex(c)
    H = cohomology(X)
    assert H.euler() == X.euler()
    for k in X.degrees:
        assert (X.d(k) @ X.d(k - 1)).is_zero()


def test_bad_complex_is_rejected():
    with pytest.raises(ComplexError):
        Complex.build({0: 1, 1: 1, 2: 1}, {0: Matrix.from_dense([[1]]), 1: Matrix.from_dense([[1]])})


def _identity_map(x):
    return ChainMap.build(x, x, {k: Matrix.identity(x.dim(k)) for k in x.degrees})


def test_pullback_without_parts_is_the_total():
    X = cochain_complex(circle(3))
    P = pullback_complex(X, [])
    assert cohomology(P.complex).as_list(0, 1) == cohomology(X).as_list(0, 1)


def test_duplicate_constraints_change_nothing():
    X = cochain_complex(interval())
    Y = cochain_complex(interval())
    c = Constraint("c", "a", "b", X, _identity_map(X), _identity_map(Y))
    one = pullback_complex(PullbackInputs(("a", "b"), (X, Y), (c,)))
    two = pullback_complex(PullbackInputs(("a", "b"), (X, Y), (c, c)))
    assert one.complex.dims == two.complex.dims
    assert cohomology(one.complex).as_list(0, 1) == [1, 0]


def test_relative_complexes_on_the_sphere():
    x = assemble(appendix_sphere(), Borel(0))
    full = cohomology(relative_complex(x, set()).complex).as_list(0, 2)
    assert full == [1, 0, 0]
    # both poles vanish: cochains on the interval relative to its ends
    assert cohomology(relative_complex(x, {"N", "S"}).complex).as_list(0, 2) == [0, 1, 0]
    assert cohomology(relative_complex(x, {"N"}).complex).as_list(0, 2) == [0, 0, 0]
    with pytest.raises(ValueError):
        relative_complex(x, {"Z"})


def test_relative_complex_requires_upward_closure():
    x = assemble(build_cp2_torus(), Borel(0))
    with pytest.raises(NotUpwardClosedError):
        relative_complex(x, {"L01"})
    relative_complex(x, {"L01", "P0", "P1"})


@pytest.mark.parametrize("coeff", [Borel(0), Borel(1), Borel(2), Rep(1), Rep(2)], ids=lambda c: str(c.tag))
def test_long_exact_sequences_on_the_sphere(coeff):
    s = appendix_sphere()
    x = assemble(s, coeff)
    chains = les_chains(list(x.names), x.order)
    assert len(chains) == 4
    for B, b in chains:
        rep = relative_les(x, B, b)
        assert rep, str(rep)


@given(seeds)
def test_long_exact_sequences_on_fuzzed_spaces(seed):
    s = two_strata(random.Random(seed), seed)
    for coeff in (Borel(0), Borel(1), Rep(1)):
        x = assemble(s, coeff)
        for B, b in les_chains(list(x.names), x.order):
            assert relative_les(x, B, b)


def test_zero_sub_complex_gives_a_quotient_isomorphism():
    X = cochain_complex(circle(2))
    zero = Complex.build({k: 0 for k in X.degrees})
    i = ChainMap.build(zero, X, {k: Matrix.zeros(X.dim(k), 0) for k in X.degrees})
    rep = les_check(zero, X, X, i, _identity_map(X))
    assert rep.exact and rep.quotient_isomorphism


@given(seeds)
def test_subdivision_keeps_cohomology(seed):
    c = simplicial_complex(random_simplices(random.Random(seed)))
    assert cohomology(cochain_complex(subdivide(c))).as_list(0, c.dimension) == c.betti()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_subdivision_carries_twisted_coefficients(n):
    c = circle(n)
    L = twisted_system(c, 1, {(f"e{n - 1}", 0): [[-1]]})
    new, L2 = subdivide(c, L)
    assert len(new.cells_of_dim(1)) == 2 * n
    assert cohomology(cochain_complex(new, L2)).as_list(0, 1) == [0, 0]


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_subdivided_spaces_keep_their_invariants(name):
    s = BUILDERS[name]()
    t = subdivide_space(s)
    assert equivariant_cohomology(t, 4).dims == equivariant_cohomology(s, 4).dims
    if name != "cp2-torus":
        for W in (0, 1):
            a, b = delocalized_cohomology(s, W), delocalized_cohomology(t, W)
            assert (a.even, a.odd) == (b.even, b.odd)
