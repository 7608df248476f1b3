from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from gradedflag.exact_linalg import (DimensionError, Matrix, SquareSolver, Subspace, det, intersect,
                                     invert, is_direct_sum, kernel, rank, rref, rref_pivots, solve,
                                     sparse_nullspace)
from gradedflag.scalar import Q, scalar, to_str

small = st.integers(-4, 4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def as_sympy(rows):
    return sympy.Matrix(rows)


def test_scalar_coercion():
    assert scalar("-3/7") == Q(-3, 7)
    assert scalar(Fraction(1, 2)) == Q(1, 2)
    assert to_str(Q(-3, 7)) == "-3/7" and to_str(Q(4)) == "4"
    with pytest.raises(TypeError):
        scalar(0.5)


def test_matrix_basics():
    a = Matrix([[1, 2], [3, 4]])
    assert a.shape == (2, 2)
    assert a.T == Matrix([[1, 3], [2, 4]])
    assert a @ (1, 1) == (3, 7)
    assert (a @ Matrix.identity(2)) == a
    assert a.trace() == 5
    assert det(a) == -2
    assert invert(a) @ a == Matrix.identity(2)
    assert invert(Matrix([[1, 2], [2, 4]])) is None
    with pytest.raises(DimensionError):
        a @ Matrix([[1, 2, 3]])


@given(matrices(4, 4))
def test_det_matches_sympy(rows):
    assert det(Matrix(rows)) == int(as_sympy(rows).det())


@given(matrices(3, 5))
def test_rref_and_rank_match_sympy(rows):
    r, piv = rref_pivots(Matrix(rows))
    assert rref(Matrix(rows)).rows[:len(piv)] == r.rows[:len(piv)]
    sr, spiv = as_sympy(rows).rref()
    assert tuple(piv) == tuple(spiv)
    assert [[Fraction(int(x.p), int(x.q)) for x in sr.row(i)] for i in range(len(piv))] == \
        [[Fraction(x) for x in row] for row in r.rows[:len(piv)]]
    assert rank(Matrix(rows)) == as_sympy(rows).rank()


@given(matrices(3, 4), st.lists(small, min_size=3, max_size=3))
def test_solve_is_consistent(rows, rhs):
    a = Matrix(rows)
    sol = solve(a, Matrix.from_columns([rhs], 3))
    consistent = as_sympy(rows).rank() == as_sympy(rows).row_join(sympy.Matrix(rhs)).rank()
    assert (sol is not None) == consistent
    if sol is not None:
        assert a @ sol.column(0) == tuple(Q(x) for x in rhs)


@given(matrices(3, 5))
def test_kernel_dimension(rows):
    a = Matrix(rows)
    ker = kernel(a)
    assert ker.dim == 5 - rank(a)
    assert all(not any(a @ v) for v in ker.vectors)


def test_subspace_operations():
    u = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    v = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    w = intersect(u, v)
    assert w == Subspace.span([(0, 2, 0)], 3)
    assert (u + v).dim == 3
    assert is_direct_sum([Subspace.span([(1, 0, 0)], 3), v], 3)
    assert not is_direct_sum([u, v], 3)
    assert u.coordinates((2, 3, 0)) == (2, 3)
    assert u.coordinates((0, 0, 1)) is None
    assert u.contains_subspace(w)


def test_sparse_nullspace():
    # x0 + x1 = 0, x2 = 0 in Q^3
    basis = sparse_nullspace([{0: Q(1), 1: Q(1)}, {2: Q(1)}], 3)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0 and v[2] == 0 and any(v)


def test_square_solver():
    s = SquareSolver(Matrix([[1, 0], [0, 2], [1, 1]]))
    assert s.full_rank
    assert s.solve((1, 4, 3)) == (1, 2)
    assert s.solve((1, 4, 0)) is None
