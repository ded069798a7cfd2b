from fractions import Fraction

import pytest
import sympy
from sympy.combinatorics.named_groups import SymmetricGroup
from hypothesis import given
from hypothesis import strategies as st

from equires.errors import GroupMismatchError, InconsistentActionError, InvalidGroupError
from equires.groups import (
    SubgroupInclusion,
    cyclic,
    dihedral,
    direct_product,
    extension,
    finite_group,
    finite_invariants,
    invariant_poly_basis,
    irrep,
    irreducibles,
    localize_char,
    o2,
    one,
    product,
    rep,
    rep_ops,
    rep_restrict,
    symmetric,
    torus,
    trivial_group,
    trivial_inclusion,
)
from equires.groups.finite import ramanujan, totient

FINITE = [cyclic(n) for n in range(1, 9)] + [dihedral(n) for n in range(2, 7)] + [symmetric(3), symmetric(4)]
FINITE += [direct_product([cyclic(2), cyclic(2)]), direct_product([cyclic(2), symmetric(3)])]


def Z2():
    return finite_group(cyclic(2), "Z2")


# character tables ----------------------------------------------------------------


@pytest.mark.parametrize("F", FINITE, ids=lambda F: F.name)
def test_rational_characters_are_orthogonal(F):
    n = len(F.chars)
    for i in range(n):
        for j in range(n):
            ip = F.inner(F.chars[i], F.chars[j])
            if i == j:
                assert ip == F.norms[i] and ip.denominator == 1 and ip > 0
            else:
                assert ip == 0


@pytest.mark.parametrize("F", FINITE, ids=lambda F: F.name)
def test_labels_match_rational_classes(F):
    assert len(F.chars) == len(F.rational_classes)
    # each rational label is a sum of norm-many Galois conjugate irreducibles
    assert sum(Fraction(d * d, nm) for d, nm in zip(F.dims, F.norms)) == F.order


def test_cyclic_table_uses_ramanujan_sums():
    F = cyclic(6)
    for idx, name in enumerate(F.char_names):
        d = 1 if name == "triv" else 2 if name == "sgn" else int(name[1:])
        assert [F.chars[idx][k] for k in range(6)] == [ramanujan(d, k) for k in range(6)]
        assert F.dims[idx] == totient(d)


def test_cyclic_three_is_paired_into_one_rational_label():
    F = cyclic(3)
    assert F.char_names == ("triv", "c3")
    assert F.dims == (1, 2) and F.norms == (1, 2)


def test_products_without_rational_table_are_rejected():
    with pytest.raises(InvalidGroupError):
        direct_product([cyclic(3), cyclic(3)])


def test_bad_multiplication_table_is_rejected():
    from equires.groups import FiniteGroup

    with pytest.raises(InvalidGroupError):
        FiniteGroup("bad", ((0, 1), (0, 1)), ("triv",), ((Fraction(1), Fraction(1)),))


# irreducibles ----------------------------------------------------------------------


def test_irreducibles_examples():
    assert irreducibles(Z2()) == [(0, 1), (1, 1)]
    assert irreducibles(torus(1), 1) == [((-1,), 1), ((0,), 1), ((1,), 1)]
    labs = irreducibles(o2(), 1)
    assert sorted(d for _, d in labs) == [1, 1, 2]


def test_torus_needs_a_window():
    with pytest.raises(ValueError):
        irreducibles(torus(2))


@pytest.mark.parametrize("W", [0, 1, 2, 3])
def test_o2_window_brute_force(W):
    # orbits of the sign action on weights |m| <= W, plus sgn on the fixed weight 0
    labs = irreducibles(o2(), W)
    assert len(labs) == W + 2
    assert sum(d for _, d in labs) == 2 * W + 2


# restriction and ring structure ------------------------------------------------------


def test_rep_restrict_examples():
    z2 = Z2()
    e = trivial_group()
    inc = trivial_inclusion(e, z2, "1<Z2")
    assert rep_restrict(inc, rep(z2, {0: 1, 1: 1})) == rep(e, {0: 2})
    T = torus(1)
    inc = trivial_inclusion(e, T, "1<T")
    assert rep_restrict(inc, irrep(T, (5,))) == rep(e, {0: 1})
    O = o2()
    inc = SubgroupInclusion(T, O, ((1,),), (((0,), 0),), "T<O2")
    assert rep_restrict(inc, irrep(O, ((-1,), 0))) == rep(T, {(1,): 1, (-1,): 1})


def test_rep_ops_examples():
    T = torus(1)
    assert rep_ops(irrep(T, (2,)), irrep(T, (3,))) == irrep(T, (5,))
    z2 = Z2()
    assert irrep(z2, 1) * irrep(z2, 1) == one(z2)
    s3 = finite_group(symmetric(3), "S3")
    std = irrep(s3, 2)
    assert std * std == rep(s3, {0: 1, 1: 1, 2: 1})


def test_s3_tensor_square_against_permutation_oracle():
    # independent: std = (#fixed points - 1) computed on sympy permutations
    G = SymmetricGroup(3)
    els = list(G.generate())
    std = {p: sum(1 for i in range(3) if p(i) == i) - 1 for p in els}
    sgn = {p: 1 if p.is_even else -1 for p in els}
    sq = {p: std[p] ** 2 for p in els}

    def inner(a, b):
        return Fraction(sum(a[p] * b[p] for p in els), len(els))

    mult = [inner(sq, {p: 1 for p in els}), inner(sq, sgn), inner(sq, std)]
    s3 = finite_group(symmetric(3), "S3")
    got = irrep(s3, 2) * irrep(s3, 2)
    assert [got[i] for i in range(3)] == mult


def test_group_mismatch_is_rejected():
    with pytest.raises(GroupMismatchError):
        irrep(Z2(), 0) + irrep(torus(1), (0,))


weights2 = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
elems2 = st.dictionaries(weights2, st.integers(-2, 2), max_size=3)


@given(elems2, elems2)
def test_restriction_to_a_circle_is_a_ring_map(a, b):
    T2 = torus(2)
    K = torus(1, "K")
    inc = SubgroupInclusion(K, T2, ((1,), (2,)), (((0, 0), 0),), "K<T2")
    x, y = rep(T2, a), rep(T2, b)
    assert rep_restrict(inc, x + y) == rep_restrict(inc, x) + rep_restrict(inc, y)
    assert rep_restrict(inc, x * y) == rep_restrict(inc, x) * rep_restrict(inc, y)


@given(st.dictionaries(st.sampled_from([0, 1, 2, 3, 4]), st.integers(-2, 2), max_size=3), st.dictionaries(st.sampled_from([0, 1, 2, 3, 4]), st.integers(-2, 2), max_size=3))
def test_dihedral_tensor_is_commutative_with_unit(a, b):
    D = finite_group(dihedral(4), "D4")
    x, y = rep(D, a), rep(D, b)
    assert x * y == y * x
    assert x * one(D) == x
    assert (x * y).dim() == x.dim() * y.dim()


@given(st.dictionaries(st.integers(-3, 3).map(lambda v: ((v,), 0)), st.integers(-2, 2), max_size=3))
def test_o2_restriction_to_circle_is_additive(a):
    O = o2()
    T = torus(1)
    inc = SubgroupInclusion(T, O, ((1,),), (((0,), 0),), "T<O2")
    lab = {}
    for (w, f), c in a.items():
        key = ((-abs(w[0]),), 0) if w[0] else ((0,), 0)
        lab[key] = lab.get(key, 0) + c
    x = rep(O, lab)
    assert rep_restrict(inc, x).dim() == x.dim()


# invariant polynomials and localization ------------------------------------------------


def test_invariant_polynomial_examples():
    z2 = Z2()
    assert len(invariant_poly_basis(z2, 0)) == 1
    assert all(len(invariant_poly_basis(z2, j)) == 0 for j in range(1, 4))
    assert invariant_poly_basis(torus(1), 3).polys == [{(3,): 1}]
    O = o2()
    assert len(invariant_poly_basis(O, 1)) == 0
    assert invariant_poly_basis(O, 2).polys == [{(2,): 1}]


@pytest.mark.parametrize("j", range(8))
def test_negation_invariants_alternate(j):
    assert len(invariant_poly_basis(o2(), j)) == (1 if j % 2 == 0 else 0)


@pytest.mark.parametrize("n,j", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_torus_invariants_are_all_monomials(n, j):
    assert len(invariant_poly_basis(torus(n), j)) == sympy.binomial(n + j - 1, j)


def test_permuting_torus_coordinates_keeps_symmetric_polynomials():
    g = extension(2, cyclic(2), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "T2xZ2")
    # symmetric polynomials of degree j in two variables: floor(j/2) + 1
    for j in range(6):
        assert len(invariant_poly_basis(g, j)) == j // 2 + 1


def test_localize_char_examples():
    s3 = finite_group(symmetric(3), "S3")
    L = localize_char(s3, irrep(s3, 2), 4)
    assert L.component(0) == (2,)
    T = torus(1)
    L = localize_char(T, irrep(T, (3,)), 3)
    assert L.to_poly() == {(0,): 1, (1,): 3, (2,): Fraction(9, 2), (3,): Fraction(9, 2)}
    L = localize_char(T, irrep(T, (1,)) - irrep(T, (0,)), 1)
    assert L.to_poly() == {(1,): 1}


@pytest.mark.parametrize("n", [-3, -1, 0, 2, 5])
def test_localize_char_matches_exponential_series(n):
    x = sympy.symbols("x")
    ser = sympy.series(sympy.exp(n * x), x, 0, 6).removeO()
    T = torus(1)
    p = localize_char(T, irrep(T, (n,)), 5).to_poly()
    for j in range(6):
        assert Fraction(str(ser.coeff(x, j))) == p.get((j,), 0)


def test_localize_char_rejects_negative_degree():
    T = torus(1)
    with pytest.raises(ValueError):
        localize_char(T, irrep(T, (0,)), -1)


@given(elems2)
def test_localization_degree_zero_is_virtual_dimension(a):
    T2 = torus(2)
    x = rep(T2, a)
    assert localize_char(T2, x, 2).component(0) == (x.dim(),) or x.is_zero()


@given(elems2, elems2)
def test_localization_is_multiplicative(a, b):
    T2 = torus(2)
    x, y = rep(T2, a), rep(T2, b)
    D = 3
    assert localize_char(T2, x * y, D) == localize_char(T2, x, D) * localize_char(T2, y, D)


def test_o2_localization_keeps_only_even_terms():
    O = o2()
    L = localize_char(O, irrep(O, ((-1,), 0)), 4)
    assert L.to_poly() == {(0,): 2, (2,): 1, (4,): Fraction(1, 12)}


# finite invariants -------------------------------------------------------------------


def test_finite_invariants_examples():
    z2 = cyclic(2)
    B = finite_invariants(z2, {1: [[0, 1], [1, 0]]})
    assert B.to_dense() == [[1], [1]]
    assert finite_invariants(z2, {1: [[-1]]}).ncols == 0
    # weight negation on the window {z^-1, z^0, z^1}
    B = finite_invariants(z2, {1: [[0, 0, 1], [0, 1, 0], [1, 0, 0]]})
    assert B.ncols == 2
    assert sorted(map(tuple, B.T.to_dense())) == [(0, 1, 0), (1, 0, 1)]


@pytest.mark.parametrize("method", ["kernel", "average"])
def test_finite_invariants_methods_agree_and_are_idempotent(method):
    from equires.linalg import rank

    S3 = symmetric(3)
    # permutation action on Q^3 through the generators (01) and (012)
    perms = {S3.element_names.index("102"): [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
             S3.element_names.index("120"): [[0, 0, 1], [1, 0, 0], [0, 1, 0]]}
    B = finite_invariants(S3, perms, method=method)
    assert B.ncols == 1
    # restricting to the invariant subspace again changes nothing
    assert rank(B) == 1


def test_inconsistent_action_is_reported():
    with pytest.raises(InconsistentActionError):
        finite_invariants(cyclic(2), {1: [[2]]})


def test_product_groups_combine_labels():
    g = product(torus(1, "S1"), Z2(), name="S1xZ2")
    labs = irreducibles(g, 1)
    assert len(labs) == 6
    assert all(d == 1 for _, d in labs)
