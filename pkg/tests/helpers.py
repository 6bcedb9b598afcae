"""Shared strategies and independent oracles for the test suite."""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from zclass.linalg import RatMatrix

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=4),
)
nonpositive_rationals = small_rationals.map(lambda x: -abs(x))


def matrices(rows, cols=None, elements=small_rationals):
    cols = rows if cols is None else cols
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(RatMatrix)


def square_matrices(min_n=1, max_n=5, elements=small_rationals):
    return st.integers(min_value=min_n, max_value=max_n).flatmap(lambda n: matrices(n, n, elements))


def rect_matrices(max_m=5, max_n=5):
    return st.tuples(st.integers(1, max_m), st.integers(1, max_n)).flatmap(lambda s: matrices(*s))


@st.composite
def z_matrices(draw, min_n=1, max_n=5):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(draw(small_rationals))
            else:
                row.append(draw(st.sampled_from([Fraction(0), Fraction(0)]) | nonpositive_rationals))
        rows.append(row)
    return RatMatrix(rows)


def to_sympy(A: RatMatrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A])


def from_sympy(S) -> RatMatrix:
    return RatMatrix([[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in S.row(i)] for i in range(S.rows)])


def frac_matrix(rows, scale=1):
    return RatMatrix([[Fraction(x) * Fraction(scale) for x in r] for r in rows])


# (line, notes) per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []
