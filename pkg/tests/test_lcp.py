from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import matrices, small_rationals
from zclass.construct import rand_instance
from zclass.geninv import BlockF0Form
from zclass.lcp import (
    LCPInstance,
    feasibility,
    feasible_region,
    is_R0,
    is_semimonotone,
    q0_necessary_witness,
    solve_enumerate,
    supports,
)
from zclass.lcp import _support_system
from zclass.linalg import DimensionError, RatMatrix, identity, inverse, zeros

EX_M = RatMatrix([[0, -1, -1], [-1, 0, -1], [0, 0, 0]])

seeds = st.integers(0, 10**6)
singular_labels = st.sampled_from(["F0-singular-reducible", "F0-singular-irreducible"])


def vectors(n, elements=small_rationals):
    return st.lists(elements, min_size=n, max_size=n)


# --- the counterexample ------------------------------------------------------------------


def test_feasible_but_unsolvable_example():
    inst = LCPInstance(-EX_M, (-1, 1, 1))
    assert inst.is_feasible_point((1, 1, 0))
    assert feasible_region(inst).contains((1, 1, 0))
    out = solve_enumerate(inst)
    assert out.feasible and inst.is_feasible_point(out.feasible_point)
    assert out.solutions == () and not out.solvable


def test_identity_with_nonnegative_q():
    out = solve_enumerate(LCPInstance(identity(3), (0, 2, "1/2")))
    assert [s.x for s in out.solutions] == [(0, 0, 0)]


def test_zero_matrix_degenerate_family():
    out = solve_enumerate(LCPInstance(zeros(2), (0, 1)))
    assert all(LCPInstance(zeros(2), (0, 1)).is_solution(s.x) for s in out.solutions)
    assert any(s.degenerate for s in out.solutions)


def test_outcome_json():
    obj = solve_enumerate(LCPInstance(identity(2), (-1, 1))).to_json()
    assert obj["solutions"] == [{"x": ["1", "0"], "y": ["0", "1"], "supports": [[0]], "degenerate": False}]


def test_dimension_checks():
    with pytest.raises(DimensionError):
        LCPInstance(identity(2), (1,))
    with pytest.raises(DimensionError):
        solve_enumerate(LCPInstance(identity(11), [0] * 11))


def test_supports_order():
    assert list(supports(2)) == [(), (0,), (1,), (0, 1)]


# --- matrix properties ----------------------------------------------------------------------


def test_property_trivial_cases():
    assert is_R0(identity(3)) == (True, None)
    assert is_semimonotone(identity(3)) == (True, None)
    assert q0_necessary_witness(identity(3)) == (False, None)
    assert q0_necessary_witness(-identity(3)) == (True, (1, 0, 0))


@given(matrices(2, elements=small_rationals.map(abs)) | matrices(3, elements=small_rationals.map(abs)))
@settings(max_examples=30)
def test_nonnegative_matrices_are_semimonotone(A):
    assert is_semimonotone(A)[0]


@given(st.integers(3, 6), seeds, singular_labels)
@settings(max_examples=60)
def test_r0_iff_b_nonzero(n, seed, label):
    M = rand_instance(label, n, seed, 0)
    form = BlockF0Form.from_matrix(M)
    ok, witness = is_R0(M)
    assert ok == any(x != 0 for x in form.b)
    if not ok:
        inst = LCPInstance(M, [0] * n)
        assert inst.is_solution(witness) and any(witness)


def test_r0_witness_for_b_zero():
    M = RatMatrix([[0, -1, 0], [-1, 0, 0], [-1, 0, 0]])
    ok, x = is_R0(M)
    assert not ok
    assert x == (0, 0, 1)


@given(st.integers(3, 6), seeds, singular_labels)
@settings(max_examples=60)
def test_singular_f0_never_semimonotone(n, seed, label):
    M = rand_instance(label, n, seed, 0)
    ok, x = is_semimonotone(M)
    assert not ok
    Mx = M @ x
    assert all(v >= 0 for v in x) and any(v > 0 for v in x)
    assert all(Mx[k] < 0 for k in range(n) if x[k] > 0)
    # the explicit construction (A^{-1} y, 0) with y < 0 is also a violation
    form = BlockF0Form.from_matrix(M)
    z = list(inverse(form.A) @ ([-1] * (n - 1))) + [0]
    Mz = M @ z
    assert all(v > 0 for v in z[:-1])
    assert all(Mz[k] < 0 for k in range(n) if z[k] > 0)


@given(st.integers(3, 6), seeds, singular_labels)
@settings(max_examples=60)
def test_q0_witness_exists_iff_c_zero(n, seed, label):
    M = rand_instance(label, n, seed, 0)
    form = BlockF0Form.from_matrix(M)
    exists, y = q0_necessary_witness(-M)
    assert exists == all(x == 0 for x in form.c)
    if exists:
        assert all(v >= 0 for v in y) and sum(y) == 1
        assert all(v <= 0 for v in (-M).T @ y)


def test_q0_witness_on_example_matrix():
    # c = 0, yet -M is not Q0: the converse fails
    assert q0_necessary_witness(-EX_M)[0]


@given(st.integers(3, 6), seeds, st.data())
@settings(max_examples=60)
def test_reducible_lcp_solution_membership(n, seed, data):
    M = rand_instance("F0-singular-reducible", n, seed, 0)
    form = BlockF0Form.from_matrix(M)
    if any(x != 0 for x in form.c):
        M = M.T  # the transpose of the b = 0 shape has c = 0
        form = BlockF0Form.from_matrix(M)
    p = data.draw(vectors(n - 1, small_rationals.map(lambda x: -abs(x))))
    qn = data.draw(small_rationals.map(abs))
    inst = LCPInstance(-M, list(p) + [qn])
    v = tuple(inverse(form.A) @ p) + (Fraction(0),)
    assert inst.is_solution(v)
    assert v in {s.x for s in solve_enumerate(inst).solutions}


# --- oracles -------------------------------------------------------------------------------------


@st.composite
def lcp_instances(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    return LCPInstance(draw(matrices(n)), draw(vectors(n)))


@given(lcp_instances())
@settings(max_examples=80)
def test_enumeration_supports_match_fourier_motzkin(inst):
    out = solve_enumerate(inst)
    for s in out.solutions:
        assert inst.is_solution(s.x)
        assert s.y == inst.w(s.x)
    listed = {S for s in out.solutions for S in s.supports}
    for S in supports(inst.n):
        assert feasibility(_support_system(inst, S), "fm").feasible == (S in listed)
    assert out.feasible == feasibility(feasible_region(inst), "fm").feasible


@given(st.integers(1, 5), seeds, st.data())
@settings(max_examples=40)
def test_invertible_m_gives_unique_solution(n, seed, data):
    A = rand_instance("InvertibleM", n, seed, 0)
    q = data.draw(vectors(n))
    out = solve_enumerate(LCPInstance(A, q))
    assert len(out.solutions) == 1
