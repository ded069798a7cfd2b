from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from equires.linalg import (
    Matrix,
    column_space,
    integer_kernel,
    invariant_factors,
    nullspace,
    rank,
    smith_normal_form,
    solve,
)

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_int) for _ in range(c)] for _ in range(r)]


def to_sympy(m):
    return sympy.Matrix(m)


@given(int_matrices())
def test_rank_matches_sympy(m):
    assert rank(Matrix.from_dense(m)) == to_sympy(m).rank()


@given(int_matrices())
def test_nullspace_is_kernel_of_right_size(m):
    M = Matrix.from_dense(m)
    N = nullspace(M)
    assert N.ncols == M.ncols - to_sympy(m).rank()
    assert (M @ N).is_zero()
    assert rank(N) == N.ncols


@given(int_matrices())
def test_column_space_spans_the_image(m):
    M = Matrix.from_dense(m)
    C = column_space(M)
    assert C.ncols == rank(M)
    assert rank(Matrix.hstack([C, M], nrows=M.nrows)) == C.ncols


@given(int_matrices(), st.lists(small_int, min_size=5, max_size=5))
def test_solve_recovers_a_consistent_system(m, x):
    M = Matrix.from_dense(m)
    xv = Matrix.from_dense([[v] for v in x[: M.ncols]])
    b = M @ xv
    y = solve(M, b)
    assert M @ y == b


def test_solve_rejects_inconsistent_system():
    with pytest.raises(ValueError):
        solve(Matrix.from_dense([[1, 0], [1, 0]]), Matrix.from_dense([[1], [2]]))


@given(int_matrices())
def test_integer_kernel_is_saturated(m):
    M = Matrix.from_dense(m)
    K = integer_kernel(M)
    assert K.is_integral()
    assert (M @ K).is_zero()
    assert K.ncols == M.ncols - rank(M)
    if K.ncols:
        # a saturated lattice has all invariant factors equal to one
        assert set(invariant_factors(K)) == {1}


@given(int_matrices())
def test_smith_form_matches_sympy(m):
    M = Matrix.from_dense(m)
    U, S, V = smith_normal_form(M)
    prod = to_sympy(U) * to_sympy(m) * to_sympy(V)
    assert prod == to_sympy(S)
    assert abs(to_sympy(U).det()) == 1 and abs(to_sympy(V).det()) == 1
    diag = [S[i][i] for i in range(min(M.nrows, M.ncols))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    from sympy.matrices.normalforms import smith_normal_form as snf

    ref = snf(to_sympy(m), domain=sympy.ZZ)
    ref_diag = sorted(abs(ref[i, i]) for i in range(min(ref.shape)) if ref[i, i])
    assert sorted(nz) == ref_diag


def test_smith_form_of_a_torsion_presentation():
    # Z^2 / <(2, 0), (0, 3)> has invariant factors 1, 6
    assert invariant_factors(Matrix.from_dense([[2, 0], [0, 3]])) == (1, 6)


def test_matrix_algebra_is_exact():
    a = Matrix.from_dense([[Fraction(1, 3), 2], [0, 1]])
    b = Matrix.identity(2)
    assert a @ b == a
    assert (a - a).is_zero()
    assert a.T.T == a
    assert a.scale(3)[0, 0] == 1
