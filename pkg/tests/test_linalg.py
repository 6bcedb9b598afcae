from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import frac_matrix, from_sympy, matrices, rect_matrices, small_rationals, square_matrices, to_sympy
from zclass.linalg import (
    DimensionError,
    NotInvertible,
    RatMatrix,
    SingularMatrixError,
    comparison_matrix,
    det,
    full_rank_factorization,
    identity,
    index_sets,
    inverse,
    is_irreducible,
    minor,
    nullspace_basis,
    principal_submatrix,
    rank,
    rref,
    sherman_morrison,
    solve,
    to_fraction,
    zeros,
)

OSTROWSKI_A = RatMatrix([[3, -2, -2], [-2, -1, -1], [-2, -1, 0]])
LEAD = RatMatrix([[0, -1, -1], [-1, 0, 0], [-1, 0, 0]])
TYPE_D = RatMatrix([[-3, -3, -3, -3], [-3, -2, -2, -2], [-3, -2, -1, -1], [-3, -2, -1, 1]])
MP_A = RatMatrix([[2, -4, -1], [-2, 4, -1], [-2, -2, 1]])
MP_M = RatMatrix([[2, -4, -1, -1], [-2, 4, -1, -4], [-2, -2, 1, -6], [0, 0, 0, 0]])


# --- construction and parsing ------------------------------------------------


def test_entries_are_lowest_terms_fractions():
    A = RatMatrix([["2/4", 3], ["-6/9", "0/5"]])
    assert A[0, 0] == Fraction(1, 2) and A[0, 0].denominator == 2
    assert A[1, 0] == Fraction(-2, 3)
    assert A[1, 1].denominator == 1


def test_floats_rejected():
    with pytest.raises(TypeError):
        to_fraction(0.5)


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        RatMatrix([[1, 2], [3]])


def test_empty_rejected():
    with pytest.raises(DimensionError):
        RatMatrix([])


def test_unicode_minus_accepted():
    assert to_fraction("−3/7") == Fraction(-3, 7)


def test_immutable():
    A = identity(2)
    with pytest.raises(AttributeError):
        A.rows = 3


# --- determinant ------------------------------------------------------------------


def test_det_identity():
    assert det(identity(3)) == 1


def test_det_ostrowski_example_is_minus_seven():
    # cofactor expansion: 3(0-1) + 2(0-2) - 2(2-2) = -7
    assert det(OSTROWSKI_A) == -7


def test_det_lead_example_singular():
    assert det(LEAD) == 0


def test_det_non_square():
    with pytest.raises(DimensionError):
        det(RatMatrix([[1, 2]]))


@given(square_matrices(max_n=6))
def test_det_matches_sympy(A):
    assert det(A) == Fraction(str(to_sympy(A).det()))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(matrices(n), matrices(n))))
def test_det_multiplicative(pair):
    A, B = pair
    assert det(A @ B) == det(A) * det(B)


@given(square_matrices())
def test_det_transpose(A):
    assert det(A.T) == det(A)


# --- submatrices and minors ---------------------------------------------------------


def test_principal_submatrix_leading_block():
    A = RatMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert principal_submatrix(A, [0, 1]) == RatMatrix([[1, 2], [4, 5]])


def test_principal_submatrix_example_block():
    assert principal_submatrix(MP_A, [0, 1]) == RatMatrix([[2, -4], [-2, 4]])


def test_principal_submatrix_singleton():
    A = RatMatrix([[1, 2], [3, 4]])
    assert principal_submatrix(A, [1]) == RatMatrix([[4]])


@pytest.mark.parametrize("S", [[], [3], [1, 1]])
def test_principal_submatrix_bad_index_sets(S):
    with pytest.raises((ValueError, IndexError)):
        principal_submatrix(identity(3), S)


def test_minor_off_diagonal_of_identity():
    assert minor(identity(3), [0], [1]) == 0


def test_minor_type_d_leading():
    assert minor(TYPE_D, [0, 1], [0, 1]) == -3


def test_type_d_order_two_minors_nonpositive():
    for rows in index_sets(4, [2]):
        for cols in index_sets(4, [2]):
            assert minor(TYPE_D, rows, cols) <= 0


def test_minor_size_mismatch():
    with pytest.raises(DimensionError):
        minor(identity(3), [0, 1], [0])


def test_index_sets_counts():
    assert len(list(index_sets(4))) == 15
    assert list(index_sets(3, [2])) == [(0, 1), (0, 2), (1, 2)]


# --- inverse ---------------------------------------------------------------------------


def test_inverse_ostrowski_example():
    # the true inverse; A @ X == I pins it down
    X = inverse(OSTROWSKI_A)
    assert X == frac_matrix([[1, -2, 0], [-2, 4, -7], [0, -7, 7]], Fraction(1, 7))
    assert OSTROWSKI_A @ X == identity(3)


def test_inverse_type_d_tridiagonal():
    expected = RatMatrix(
        [["2/3", -1, 0, 0], [-1, 2, -1, 0], [0, -1, "3/2", "-1/2"], [0, 0, "-1/2", "1/2"]]
    )
    assert inverse(TYPE_D) == expected


def test_inverse_identity():
    assert inverse(identity(4)) == identity(4)


def test_inverse_singular_raises_with_det():
    with pytest.raises(SingularMatrixError) as info:
        inverse(LEAD)
    assert info.value.det == 0


@given(square_matrices(max_n=6))
def test_inverse_is_two_sided(A):
    assume(det(A) != 0)
    X = inverse(A)
    assert A @ X == identity(A.rows) == X @ A


@given(square_matrices(max_n=5))
def test_inverse_matches_sympy(A):
    assume(det(A) != 0)
    assert inverse(A) == from_sympy(to_sympy(A).inv())


@given(square_matrices(max_n=5), st.data())
def test_solve(A, data):
    assume(det(A) != 0)
    b = data.draw(st.lists(small_rationals, min_size=A.rows, max_size=A.rows))
    x = solve(A, b)
    assert A @ x == tuple(b)


# --- rank, rref, null space --------------------------------------------------------------


def test_rank_and_nullspace_of_four_by_four_example():
    assert rank(MP_M) == 3
    (v,) = nullspace_basis(MP_M)
    scale = Fraction(37) / v[0]
    assert tuple(scale * x for x in v) == (37, 14, 30, -12)


def test_identity_has_empty_nullspace():
    assert rank(identity(3)) == 3
    assert nullspace_basis(identity(3)) == []


def test_zero_matrix_nullspace():
    assert rank(zeros(2)) == 0
    assert nullspace_basis(zeros(2)) == [(1, 0), (0, 1)]


@given(rect_matrices())
def test_rank_matches_sympy(A):
    assert rank(A) == to_sympy(A).rank()


@given(rect_matrices())
def test_rref_matches_sympy(A):
    R, pivots = rref(A)
    S, spiv = to_sympy(A).rref()
    assert R == from_sympy(S)
    assert pivots == tuple(spiv)


@given(rect_matrices())
def test_rank_nullity(A):
    basis = nullspace_basis(A)
    assert len(basis) + rank(A) == A.cols
    for v in basis:
        assert all(x == 0 for x in A @ v)


# --- full rank factorization -----------------------------------------------------------


def test_frf_rank_one():
    frf = full_rank_factorization(RatMatrix([[1, 2], [2, 4]]))
    assert frf.F == RatMatrix([[1], [2]])
    assert frf.G == RatMatrix([[1, 2]])


def test_frf_invertible():
    A = RatMatrix([[2, 1], [1, 1]])
    frf = full_rank_factorization(A)
    assert frf.F == A and frf.G == identity(2)


def test_frf_zero_rejected():
    with pytest.raises(DimensionError):
        full_rank_factorization(zeros(2, 3))


def test_block_factorization_of_singular_f0_is_valid():
    # M = [[A], [c^T]] [I | A^{-1} b]
    A = RatMatrix([[0, -1], [-1, 0]])
    b, c = (-1, 0), (-1, 0)
    F = A.vstack(RatMatrix.row_vector(c))
    G = identity(2).hstack(RatMatrix.column(inverse(A) @ b))
    assert F @ G == LEAD
    assert rank(F) == rank(G) == 2


@given(rect_matrices(6, 6))
def test_frf_properties(A):
    assume(not A.is_zero())
    frf = full_rank_factorization(A)
    assert frf.F @ frf.G == A
    assert rank(frf.F) == rank(frf.G) == rank(A) == frf.r


# --- irreducibility --------------------------------------------------------------------


def _nx_irreducible(A):
    g = nx.DiGraph()
    g.add_nodes_from(range(A.rows))
    g.add_edges_from((i, j) for i in range(A.rows) for j in range(A.cols) if i != j and A[i, j] != 0)
    return nx.is_strongly_connected(g)


def test_irreducible_examples():
    assert is_irreducible(LEAD)
    assert not is_irreducible(RatMatrix([[1, -2, -1], [-3, 1, -2], [0, 0, 0]]))
    assert not is_irreducible(identity(2))
    assert is_irreducible(RatMatrix([[5]]))


@given(square_matrices(min_n=2, max_n=6, elements=st.sampled_from([Fraction(0), Fraction(0), Fraction(-1), Fraction(2)])))
def test_irreducible_matches_networkx(A):
    assert is_irreducible(A) == _nx_irreducible(A)


@given(square_matrices(max_n=5))
def test_irreducible_preserved_by_inversion(A):
    assume(det(A) != 0)
    assert is_irreducible(A) == is_irreducible(inverse(A))


# --- comparison matrix and Sherman-Morrison ----------------------------------------------


def test_comparison_matrix_example():
    assert comparison_matrix(OSTROWSKI_A) == RatMatrix([[3, -2, -2], [-2, 1, -1], [-2, -1, 0]])


def test_comparison_matrix_fixes_z_with_nonnegative_diagonal():
    assert comparison_matrix(LEAD) == LEAD
    assert comparison_matrix(identity(3)) == identity(3)


@given(square_matrices())
def test_comparison_matrix_is_z_with_nonnegative_diagonal(A):
    C = comparison_matrix(A)
    n = A.rows
    assert all(C[i, j] <= 0 for i in range(n) for j in range(n) if i != j)
    assert all(x >= 0 for x in C.diagonal())


def test_sherman_morrison_zero_update():
    X = inverse(RatMatrix([[2, 1], [1, 1]]))
    assert sherman_morrison(X, (0, 0), (1, 1)) == X


def test_sherman_morrison_unit_update():
    assert sherman_morrison(identity(2), (1, 0), (1, 0)) == RatMatrix([["1/2", 0], [0, 1]])


def test_sherman_morrison_forced_singular():
    with pytest.raises(NotInvertible):
        sherman_morrison(identity(1), (-1,), (1,))


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(matrices(n), st.lists(small_rationals, min_size=n, max_size=n), st.lists(small_rationals, min_size=n, max_size=n))))
def test_sherman_morrison_matches_direct_inverse(case):
    A, u, v = case
    assume(det(A) != 0)
    updated = A + RatMatrix.column(u) @ RatMatrix.row_vector(v)
    if det(updated) == 0:
        with pytest.raises(NotInvertible):
            sherman_morrison(inverse(A), u, v)
    else:
        assert sherman_morrison(inverse(A), u, v) == inverse(updated)
