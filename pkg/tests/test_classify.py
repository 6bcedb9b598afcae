import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from helpers import matrices, nonpositive_rationals, small_rationals, to_sympy, z_matrices
from zclass import classify as C
from zclass.construct import make_type_d, rand_instance
from zclass.linalg import RatMatrix, comparison_matrix, det, identity, inverse, is_irreducible, zeros

LEAD = RatMatrix([[0, -1, -1], [-1, 0, 0], [-1, 0, 0]])
MP_A = RatMatrix([[2, -4, -1], [-2, 4, -1], [-2, -2, 1]])
MP_M = RatMatrix([[2, -4, -1, -1], [-2, 4, -1, -4], [-2, -2, 1, -6], [0, 0, 0, 0]])
TYPE_D = make_type_d([-3, -2, -1, 1])
OSTROWSKI_A = RatMatrix([[3, -2, -2], [-2, -1, -1], [-2, -1, 0]])

seeds = st.integers(0, 10**6)


# --- examples -----------------------------------------------------------------------


def test_is_Z_examples():
    assert C.is_Z(identity(3))
    assert C.is_Z(MP_M)
    assert not C.is_Z(RatMatrix([[0, 1], [0, 0]]))


def test_M_examples():
    assert C.is_M(zeros(2)) and not C.is_invertible_M(zeros(2))
    A = RatMatrix([[2, -1], [-1, 2]])
    assert C.is_invertible_M(A)
    assert inverse(A) == RatMatrix([["2/3", "1/3"], ["1/3", "2/3"]])
    singular = identity(2) - RatMatrix([["1/2", "1/2"], ["1/2", "1/2"]])
    assert C.is_M(singular) and not C.is_invertible_M(singular)


def test_H_examples():
    assert C.is_H(RatMatrix([[2, -1], [-1, 2]]))
    assert C.is_H(identity(2))
    assert det(comparison_matrix(OSTROWSKI_A)) == -15
    assert not C.is_H(OSTROWSKI_A)


def test_N_examples():
    assert C.is_N0(MP_A)
    two = RatMatrix([[0, -2], [-3, 0]])
    assert C.is_N0(two) and not C.is_N(two)
    assert not C.is_N0(identity(3)) and not C.is_N(identity(3))


def test_F0_examples():
    assert C.is_F0(MP_M)
    assert C.is_F0(LEAD)
    assert not C.is_F0(identity(3))
    with pytest.raises(C.DimensionTooSmall):
        C.is_F0(identity(2))


def test_F0_witness_is_an_N0_submatrix():
    v = C.check_F0(MP_M)
    S = v.witness["index_set"]
    assert len(S) == 3 and C.is_N0(MP_M.take(S, S))


def test_false_verdicts_carry_witnesses():
    v = C.check_M(RatMatrix([[1, -2], [-2, 1]]))
    assert not v and v.witness == {"index_set": (0, 1), "minor": -3}
    assert C.check_Z(RatMatrix([[0, 1], [0, 0]])).witness == (0, 1)
    v = C.check_inverse_F0(LEAD)
    assert not v and v.witness == {"det": 0}


def test_inverse_class_examples():
    assert C.is_inverse_F0(TYPE_D)
    assert C.is_type_D(TYPE_D)
    assert C.check_type_D(TYPE_D).witness["a"] == (-3, -2, -1, 1)
    assert C.is_totally_nonpositive_ge2(TYPE_D)
    assert C.is_inverse_N0(make_type_d([-3, -2, -1]))
    assert C.is_inverse_M(identity(3))
    assert not C.is_type_D(identity(3))
    assert not C.is_totally_nonpositive_ge2(identity(3))


def test_one_by_one_conventions():
    assert C.is_M(RatMatrix([[0]])) and not C.is_invertible_M(RatMatrix([[0]]))
    assert C.is_invertible_M(RatMatrix([[2]]))
    assert C.is_N0(RatMatrix([[-1]])) and C.is_N(RatMatrix([[-1]]))
    assert not C.is_N0(RatMatrix([[0]]))


def test_report_json():
    report = C.classify(MP_M)
    obj = json.loads(json.dumps(report.to_json()))
    assert obj["class"]["F0"] is True and obj["class"]["InverseF0"] is False
    assert obj["witnesses"]["InverseF0"]["witness"] == {"det": "0"}
    assert set(obj["class"]) == {x.value for x in C.ClassLabel}


def test_minor_cap():
    with pytest.raises(C.TooLarge):
        C.principal_minors(identity(13))


def test_spectral_examples():
    assert C.bracket_spectral_radius(zeros(3)) == (0, 0)
    lo, hi = C.bracket_spectral_radius(RatMatrix([[0, 1], [1, 0]]))
    assert lo <= 1 <= hi and hi - lo <= C.DEFAULT_PRECISION
    assert C.f0_by_spectral_radius(MP_M) is True
    assert C.f0_by_spectral_radius(LEAD) is True
    assert C.f0_by_spectral_radius(identity(3)) is False


def test_negative_eigenvalue_examples():
    assert C.negative_eigenvalue_count(identity(2)).negative_real_root_count == 0
    assert C.negative_eigenvalue_count(MP_A).negative_real_root_count == 1
    sig = C.negative_eigenvalue_count(RatMatrix([[0, -1], [-1, 0]]))
    assert sig.coefficients == (1, 0, -1) and sig.negative_real_root_count == 1


# --- structural properties ------------------------------------------------------------------


@given(matrices(3) | matrices(4) | z_matrices(max_n=4))
def test_implication_lattice(A):
    report = C.classify(A)
    assert report.consistent()
    if report["N"]:
        assert report["N0"]
    if report["InverseN0"]:
        assert report["Nonpositive"]


@given(z_matrices(max_n=5))
def test_n0_matches_inverse_characterization(A):
    assert C.is_N0(A) == C.n0_by_inverse(A)


@given(st.integers(1, 6), seeds)
@settings(max_examples=60)
def test_n0_inverse_nonpositive_and_irreducible(n, seed):
    A = rand_instance("N0", n, seed, 0)
    assert C.is_N0(A)
    assert inverse(A).is_nonpositive()
    assert is_irreducible(A)


@given(st.integers(3, 6), seeds)
@settings(max_examples=60)
def test_nonsingular_f0_inverse_conditions(n, seed):
    A = rand_instance("F0", n, seed, 0)
    assert det(A) < 0
    X = inverse(A)
    assert C.is_Z(X)
    assert any(x > 0 for x in X.diagonal())
    if n <= 5:
        assert all(v <= 0 for S, v in C.principal_minors(X).items() if len(S) >= 2)
    assert C.f0_by_inverse_conditions(A)


@given(z_matrices(min_n=3, max_n=5))
def test_f0_indirect_agrees_on_nonsingular_z(A):
    assume(det(A) != 0)
    assert C.is_F0(A) == C.f0_by_inverse_conditions(A)


@given(matrices(3) | z_matrices(min_n=3, max_n=4) | matrices(3, elements=nonpositive_rationals))
def test_inverse_classes_agree_with_indirect_routes(A):
    assert C.is_inverse_M(A) == C.inverse_M_indirect(A)
    assert C.is_inverse_N0(A) == C.inverse_N0_indirect(A)
    assert C.is_inverse_F0(A) == C.inverse_F0_indirect(A)


# --- 2x2 closed forms ---------------------------------------------------------------------

entry_2x2 = st.sampled_from([Fraction(0)] * 3) | small_rationals


@given(st.tuples(entry_2x2, entry_2x2, entry_2x2, entry_2x2))
def test_two_by_two_n0_closed_forms(entries):
    alpha, beta, gamma, delta = entries
    A = RatMatrix([[alpha, beta], [gamma, delta]])
    off = beta < 0 and gamma < 0
    forms = [
        alpha == 0 and delta > 0 and off,
        alpha > 0 and delta == 0 and off,
        alpha == 0 and delta == 0 and off,
        alpha > 0 and delta > 0 and off and alpha * delta < beta * gamma,
    ]
    assert C.is_N0(A) == any(forms)
    assert sum(forms) <= 1


# --- spectral and Sturm cross-checks ------------------------------------------------------------


@given(matrices(3, elements=small_rationals.map(abs)) | matrices(2, elements=small_rationals.map(abs)))
@settings(max_examples=40)
def test_spectral_bracket_contains_largest_real_eigenvalue(B):
    lo, hi = C.bracket_spectral_radius(B)
    assert lo <= hi and hi - lo <= C.DEFAULT_PRECISION
    x = sympy.symbols("x")
    rho = max(sympy.real_roots(to_sympy(B).charpoly(x).as_expr(), x))
    assert sympy.Rational(lo.numerator, lo.denominator) <= rho <= sympy.Rational(hi.numerator, hi.denominator)


@given(z_matrices(min_n=3, max_n=5))
@settings(max_examples=60)
def test_spectral_f0_agrees_with_minor_classification(A):
    assert C.f0_by_spectral_radius(A) == C.is_F0(A)


@given(st.integers(3, 5), seeds)
@settings(max_examples=30)
def test_spectral_f0_on_generated_f0(n, seed):
    for label in ("F0", "F0-singular-reducible", "F0-singular-irreducible"):
        assert C.f0_by_spectral_radius(rand_instance(label, n, seed, 0)) is True


@given(matrices(1) | matrices(2) | matrices(3) | matrices(4))
def test_charpoly_matches_sympy(A):
    coeffs = C.characteristic_polynomial(A)
    expected = to_sympy(A).charpoly().all_coeffs()
    assert list(coeffs) == [Fraction(str(c)) for c in expected]


@given(matrices(2) | matrices(3) | matrices(4))
@settings(max_examples=60)
def test_sturm_count_matches_sympy(A):
    x = sympy.symbols("x")
    p = to_sympy(A).charpoly(x).as_expr()
    roots = {r for r in sympy.real_roots(p, x) if r < 0}
    assert C.negative_eigenvalue_count(A).negative_real_root_count == len(roots)


@given(st.integers(1, 5), seeds)
@settings(max_examples=40)
def test_n0_has_one_negative_eigenvalue(n, seed):
    A = rand_instance("N0", n, seed, 0)
    assert C.negative_eigenvalue_count(A).negative_real_root_count == 1


# --- Ostrowski and Fan ------------------------------------------------------------------------


@given(st.integers(1, 5), seeds)
@settings(max_examples=60)
def test_ostrowski_on_h_matrices(n, seed):
    A = rand_instance("H", n, seed, 0)
    assert C.is_H(A)
    bound = inverse(comparison_matrix(A))
    assert inverse(A).abs() <= bound


def _fan_lhs(A):
    return C.is_invertible_M(A - identity(A.rows))


def _fan_rhs(A):
    if not C.is_invertible_M(A):
        return False
    return C.is_invertible_M(identity(A.rows) - inverse(A))


@given(st.integers(1, 5), seeds)
@settings(max_examples=60)
def test_fan_forward(n, seed):
    A = rand_instance("InvertibleM", n, seed, 0) + identity(n)
    assert _fan_lhs(A) and _fan_rhs(A)


@given(z_matrices(max_n=4))
def test_fan_equivalence(A):
    assert _fan_lhs(A) == _fan_rhs(A)


@given(st.integers(1, 5), seeds)
@settings(max_examples=40)
def test_fan_backward(n, seed):
    # A invertible M with I - A^{-1} invertible M: A = I + B^{-1}, B invertible M
    B = rand_instance("InvertibleM", n, seed, 0)
    A = identity(n) + inverse(B)
    if C.is_Z(A):
        assert _fan_rhs(A) and _fan_lhs(A)
    else:
        assert not _fan_rhs(A) and not _fan_lhs(A)
