"""Membership tests for the Z-matrix subclasses.

Every predicate is decided from exact principal minors, never from
eigenvalues.  The ``check_*`` functions return a :class:`Verdict` carrying a
witness (the first violating index set, the minor value, ...); the ``is_*``
functions are thin boolean wrappers.

Conventions for 1x1 matrices ``[a]``: M iff ``a >= 0``, invertible M iff
``a > 0``, N and N0 iff ``a < 0``.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .linalg import (
    DimensionError,
    RatMatrix,
    comparison_matrix,
    det,
    identity,
    index_sets,
    inverse,
    is_irreducible,
    minor,
)

MAX_MINOR_DIM = 12


class DimensionTooSmall(DimensionError):
    """F0 membership is only defined for n >= 3."""


class TooLarge(DimensionError):
    """Minor-complete predicates refuse matrices above MAX_MINOR_DIM."""


class ClassLabel(str, enum.Enum):
    Z = "Z"
    Nonnegative = "Nonnegative"
    Nonpositive = "Nonpositive"
    M = "M"
    InvertibleM = "InvertibleM"
    H = "H"
    N = "N"
    N0 = "N0"
    F0 = "F0"
    InverseM = "InverseM"
    InverseN0 = "InverseN0"
    InverseF0 = "InverseF0"
    TypeD = "TypeD"
    TotallyNonpositiveGe2 = "TotallyNonpositiveGe2"


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self):
        return self.holds

    def to_json(self):
        from .io import jsonable

        out = {"holds": self.holds}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


def _square(A: RatMatrix):
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.rows}x{A.cols}")


@functools.lru_cache(maxsize=512)
def principal_minors(A: RatMatrix) -> dict[tuple[int, ...], Fraction]:
    """All ``2^n - 1`` principal minors, keyed by index set in enumeration order."""
    _square(A)
    if A.rows > MAX_MINOR_DIM:
        raise TooLarge(f"principal-minor enumeration is capped at n = {MAX_MINOR_DIM}")
    return {S: det(A.take(S, S)) for S in index_sets(A.rows)}


@functools.lru_cache(maxsize=512)
def _inverse_or_none(A: RatMatrix):
    return inverse(A) if det(A) != 0 else None


# --- sign patterns -------------------------------------------------------------


def check_Z(A: RatMatrix) -> Verdict:
    _square(A)
    for i in range(A.rows):
        for j in range(A.cols):
            if i != j and A[i, j] > 0:
                return Verdict(False, (i, j), "positive off-diagonal entry")
    return Verdict(True)


def check_nonnegative(A: RatMatrix) -> Verdict:
    for i, r in enumerate(A):
        for j, x in enumerate(r):
            if x < 0:
                return Verdict(False, (i, j), "negative entry")
    return Verdict(True)


def check_nonpositive(A: RatMatrix) -> Verdict:
    for i, r in enumerate(A):
        for j, x in enumerate(r):
            if x > 0:
                return Verdict(False, (i, j), "positive entry")
    return Verdict(True)


# --- M, invertible M, H ----------------------------------------------------------


def _minors_at_least(A, bound_ok, orders=None):
    pm = principal_minors(A)
    wanted = None if orders is None else set(orders)
    for S, v in pm.items():
        if wanted is not None and len(S) not in wanted:
            continue
        if not bound_ok(v):
            return S, v
    return None


def check_M(A: RatMatrix) -> Verdict:
    """Z-matrix with every principal minor nonnegative."""
    z = check_Z(A)
    if not z:
        return z
    bad = _minors_at_least(A, lambda v: v >= 0)
    if bad:
        return Verdict(False, {"index_set": bad[0], "minor": bad[1]}, "negative principal minor")
    return Verdict(True)


def check_invertible_M(A: RatMatrix) -> Verdict:
    """Z-matrix with every leading principal minor positive."""
    z = check_Z(A)
    if not z:
        return z
    for k in range(1, A.rows + 1):
        S = tuple(range(k))
        v = principal_minors(A)[S] if A.rows <= MAX_MINOR_DIM else det(A.take(S, S))
        if v <= 0:
            return Verdict(False, {"index_set": S, "minor": v}, "nonpositive leading principal minor")
    return Verdict(True)


def check_H(A: RatMatrix) -> Verdict:
    v = check_invertible_M(comparison_matrix(A))
    if v:
        return Verdict(True)
    return Verdict(False, v.witness, "comparison matrix: " + v.reason)


# --- N, N0, F0 -------------------------------------------------------------------


def check_N(A: RatMatrix) -> Verdict:
    z = check_Z(A)
    if not z:
        return z
    n = A.rows
    d = principal_minors(A)[tuple(range(n))]
    if d >= 0:
        return Verdict(False, {"det": d}, "determinant is not negative")
    bad = _minors_at_least(A, lambda v: v > 0, orders=range(1, n))
    if bad:
        return Verdict(False, {"index_set": bad[0], "minor": bad[1]}, "proper principal submatrix not invertible M")
    return Verdict(True, {"det": d})


def check_N0(A: RatMatrix) -> Verdict:
    z = check_Z(A)
    if not z:
        return z
    n = A.rows
    d = principal_minors(A)[tuple(range(n))]
    if d >= 0:
        return Verdict(False, {"det": d}, "determinant is not negative")
    bad = _minors_at_least(A, lambda v: v >= 0, orders=range(1, n))
    if bad:
        return Verdict(False, {"index_set": bad[0], "minor": bad[1]}, "proper principal submatrix not M")
    return Verdict(True, {"det": d})


def check_F0(A: RatMatrix) -> Verdict:
    """Z, principal submatrices of order <= n-2 are M, some order n-1 one is N0.

    The witness of a true verdict is the index set of an N0 submatrix.
    """
    _square(A)
    n = A.rows
    if n < 3:
        raise DimensionTooSmall("F0 needs n >= 3")
    z = check_Z(A)
    if not z:
        return z
    bad = _minors_at_least(A, lambda v: v >= 0, orders=range(1, n - 1))
    if bad:
        return Verdict(False, {"index_set": bad[0], "minor": bad[1]}, "small principal submatrix not M")
    pm = principal_minors(A)
    # proper minors of an order n-1 submatrix have order <= n-2 and are already >= 0
    for S in itertools.combinations(range(n), n - 1):
        if pm[S] < 0:
            return Verdict(True, {"index_set": S, "minor": pm[S]})
    return Verdict(False, None, "no principal submatrix of order n-1 is N0")


def _f0_or_false(A: RatMatrix) -> Verdict:
    if A.rows < 3:
        return Verdict(False, {"n": A.rows}, "F0 needs n >= 3")
    return check_F0(A)


# --- inverse classes -------------------------------------------------------------


def _inverse_class(A, sign_check, inner, label):
    _square(A)
    if sign_check is not None:
        s = sign_check(A)
        if not s:
            return s
    Ainv = _inverse_or_none(A)
    if Ainv is None:
        return Verdict(False, {"det": Fraction(0)}, "singular")
    v = inner(Ainv)
    if v:
        return Verdict(True, {"inverse": Ainv})
    return Verdict(False, {"inverse": Ainv, "inner": v.witness}, f"inverse is not {label}: {v.reason}")


def check_inverse_M(A: RatMatrix) -> Verdict:
    return _inverse_class(A, check_nonnegative, check_M, "M")


def check_inverse_N0(A: RatMatrix) -> Verdict:
    return _inverse_class(A, check_nonpositive, check_N0, "N0")


def check_inverse_F0(A: RatMatrix) -> Verdict:
    return _inverse_class(A, None, _f0_or_false, "F0")


# Indirect characterizations, used as cross-checks of the direct ones above.


def n0_by_inverse(A: RatMatrix) -> bool:
    """N0 iff Z, nonsingular, inverse <= 0 and irreducible."""
    if not check_Z(A):
        return False
    Ainv = _inverse_or_none(A)
    return Ainv is not None and Ainv.is_nonpositive() and is_irreducible(A)


def inverse_M_indirect(A: RatMatrix) -> bool:
    # a nonsingular Z-matrix with nonnegative inverse is an invertible M-matrix
    Ainv = _inverse_or_none(A)
    return A.is_nonnegative() and Ainv is not None and bool(check_Z(Ainv))


def inverse_N0_indirect(A: RatMatrix) -> bool:
    Ainv = _inverse_or_none(A)
    return A.is_nonpositive() and Ainv is not None and bool(check_Z(Ainv)) and is_irreducible(A)


def f0_by_inverse_conditions(M: RatMatrix) -> bool:
    """For a nonsingular Z-matrix: F0 iff det < 0, principal minors of the
    inverse of order >= 2 are <= 0, and the inverse has a positive diagonal entry."""
    if M.rows < 3 or not check_Z(M):
        return False
    Minv = _inverse_or_none(M)
    if Minv is None:
        raise ValueError("characterization applies to nonsingular matrices only")
    if det(M) >= 0:
        return False
    pm = principal_minors(Minv)
    if any(v > 0 for S, v in pm.items() if len(S) >= 2):
        return False
    return any(x > 0 for x in Minv.diagonal())


def cofactor_pattern(M: RatMatrix) -> Verdict:
    """``det M < 0`` and ``det M(i:j) = 0`` whenever ``i != j`` and ``i + j`` is even.

    ``M(i:j)`` deletes row i and column j.  For a matrix with a positive
    diagonal entry and all minors of order >= 2 nonpositive this is
    equivalent to being inverse F0.
    """
    _square(M)
    n = M.rows
    d = det(M)
    if d >= 0:
        return Verdict(False, {"det": d}, "determinant is not negative")
    for i in range(n):
        for j in range(n):
            if i != j and (i + j) % 2 == 0:
                v = minor(M, [k for k in range(n) if k != i], [k for k in range(n) if k != j])
                if v != 0:
                    return Verdict(False, {"deleted": (i, j), "minor": v}, "cofactor with i + j even is nonzero")
    return Verdict(True, {"det": d})


def inverse_F0_indirect(A: RatMatrix) -> bool:
    Ainv = _inverse_or_none(A)
    if Ainv is None or A.rows < 3:
        return False
    return f0_by_inverse_conditions(Ainv)


# --- type D and minor signs -------------------------------------------------------


def check_type_D(A: RatMatrix) -> Verdict:
    """``a_ij = a_min(i,j)`` with strictly increasing ``a_1 < ... < a_n``."""
    _square(A)
    a = A.diagonal()
    for k in range(len(a) - 1):
        if not a[k] < a[k + 1]:
            return Verdict(False, {"position": k}, "diagonal is not strictly increasing")
    for i in range(A.rows):
        for j in range(A.cols):
            if A[i, j] != a[min(i, j)]:
                return Verdict(False, {"entry": (i, j)}, "entry breaks the type-D pattern")
    return Verdict(True, {"a": a})


def check_totally_nonpositive_ge2(A: RatMatrix) -> Verdict:
    """Every minor of order at least two is nonpositive."""
    _square(A)
    n = A.rows
    if n > MAX_MINOR_DIM:
        raise TooLarge(f"minor enumeration is capped at n = {MAX_MINOR_DIM}")
    for k in range(2, n + 1):
        for rs in itertools.combinations(range(n), k):
            for cs in itertools.combinations(range(n), k):
                v = minor(A, rs, cs)
                if v > 0:
                    return Verdict(False, {"rows": rs, "cols": cs, "minor": v}, "positive minor")
    return Verdict(True)


# --- boolean wrappers ---------------------------------------------------------------


def is_Z(A): return check_Z(A).holds
def is_M(A): return check_M(A).holds
def is_invertible_M(A): return check_invertible_M(A).holds
def is_H(A): return check_H(A).holds
def is_N(A): return check_N(A).holds
def is_N0(A): return check_N0(A).holds
def is_F0(A): return check_F0(A).holds
def is_inverse_M(A): return check_inverse_M(A).holds
def is_inverse_N0(A): return check_inverse_N0(A).holds
def is_inverse_F0(A): return check_inverse_F0(A).holds
def is_type_D(A): return check_type_D(A).holds
def is_totally_nonpositive_ge2(A): return check_totally_nonpositive_ge2(A).holds


# --- report --------------------------------------------------------------------------

_CHECKS = {
    ClassLabel.Z: check_Z,
    ClassLabel.Nonnegative: check_nonnegative,
    ClassLabel.Nonpositive: check_nonpositive,
    ClassLabel.M: check_M,
    ClassLabel.InvertibleM: check_invertible_M,
    ClassLabel.H: check_H,
    ClassLabel.N: check_N,
    ClassLabel.N0: check_N0,
    ClassLabel.F0: _f0_or_false,
    ClassLabel.InverseM: check_inverse_M,
    ClassLabel.InverseN0: check_inverse_N0,
    ClassLabel.InverseF0: check_inverse_F0,
    ClassLabel.TypeD: check_type_D,
    ClassLabel.TotallyNonpositiveGe2: check_totally_nonpositive_ge2,
}

# (a, b): a implies b
IMPLICATIONS = [
    (ClassLabel.InvertibleM, ClassLabel.M),
    (ClassLabel.M, ClassLabel.Z),
    (ClassLabel.N, ClassLabel.N0),
    (ClassLabel.N0, ClassLabel.Z),
    (ClassLabel.F0, ClassLabel.Z),
    (ClassLabel.InverseN0, ClassLabel.Nonpositive),
    (ClassLabel.InverseM, ClassLabel.Nonnegative),
]


@dataclass(frozen=True)
class ClassReport:
    matrix: RatMatrix
    verdicts: dict = field(default_factory=dict)

    def __getitem__(self, label) -> bool:
        return self.verdicts[ClassLabel(label)].holds

    def consistent(self) -> bool:
        return all(self[b] for a, b in IMPLICATIONS if self[a])

    def to_json(self) -> dict:
        from .io import jsonable

        return {
            "class": {k.value: v.holds for k, v in self.verdicts.items()},
            "witnesses": {
                k.value: jsonable({"reason": v.reason, "witness": v.witness})
                for k, v in self.verdicts.items()
                if v.witness is not None or v.reason
            },
        }


def classify(A: RatMatrix) -> ClassReport:
    _square(A)
    report = ClassReport(A, {label: fn(A) for label, fn in _CHECKS.items()})
    assert report.consistent(), "class implication lattice violated"
    return report


# --- spectral cross-check -------------------------------------------------------------

DEFAULT_PRECISION = Fraction(1, 2**30)
ESCALATED_PRECISION = Fraction(1, 2**60)


@dataclass(frozen=True)
class SpectralDiagnostics:
    rho: tuple[Fraction, Fraction]
    rho_r: dict
    precision: Fraction


def _shifted(C: RatMatrix, s: Fraction) -> RatMatrix:
    return identity(C.rows) * s - C


def _above_radius(C, s):
    # sI - C (a Z-matrix since C >= 0) is an invertible M-matrix iff s > rho(C)
    return check_invertible_M(_shifted(C, s)).holds


def _at_least_radius(C, s):
    return check_M(_shifted(C, s)).holds


def bracket_spectral_radius(C: RatMatrix, precision: Fraction = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Interval ``[lo, hi]`` containing rho(C) for ``C >= 0``, width <= precision.

    Bisects on dyadic points of ``[0, 2^k]``; a midpoint where ``sI - C`` is a
    singular M-matrix is rho(C) itself and collapses the bracket.
    """
    if not C.is_nonnegative():
        raise ValueError("spectral bracketing needs a nonnegative matrix")
    if _at_least_radius(C, Fraction(0)):
        return Fraction(0), Fraction(0)
    bound = max(sum(r) for r in C)
    hi = Fraction(1)
    while hi < bound:
        hi *= 2
    lo = Fraction(0)
    while hi - lo > precision:
        mid = (lo + hi) / 2
        if _above_radius(C, mid):
            hi = mid
        elif _at_least_radius(C, mid):
            return mid, mid
        else:
            lo = mid
    return lo, hi


def bracket_rho_r(B: RatMatrix, r: int, precision: Fraction = DEFAULT_PRECISION) -> tuple[Fraction, Fraction]:
    """Bracket for the largest spectral radius over order-r principal submatrices."""
    if r == 0:
        return Fraction(0), Fraction(0)
    brackets = [bracket_spectral_radius(B.take(S, S), precision) for S in itertools.combinations(range(B.rows), r)]
    return max(b[0] for b in brackets), max(b[1] for b in brackets)


def spectral_diagnostics(B: RatMatrix, precision: Fraction = DEFAULT_PRECISION, orders=None) -> SpectralDiagnostics:
    _square(B)
    if not B.is_nonnegative():
        raise ValueError("spectral diagnostics need B >= 0")
    n = B.rows
    orders = range(1, n) if orders is None else orders
    return SpectralDiagnostics(
        rho=bracket_spectral_radius(B, precision),
        rho_r={r: bracket_rho_r(B, r, precision) for r in orders},
        precision=precision,
    )


UNDECIDED = "boundary-undecided"


def _le(bracket, t):
    lo, hi = bracket
    if hi <= t:
        return True
    if lo > t:
        return False
    return None


def f0_by_spectral_radius(A: RatMatrix, precision: Fraction = DEFAULT_PRECISION):
    """F0 test through ``A = tI - B`` and ``rho_{n-2}(B) <= t < rho_{n-1}(B)``.

    Returns True, False or the string ``"boundary-undecided"``.  The shift t is
    the smallest power of two at least max(1, max diagonal); F0 membership does
    not depend on the shift, and a dyadic t is hit exactly by the bisection
    when a radius equals it.
    """
    _square(A)
    n = A.rows
    if n < 3:
        raise DimensionTooSmall("F0 needs n >= 3")
    if not check_Z(A):
        return False
    top = max(A.diagonal())
    t = Fraction(1)
    while t < top:
        t *= 2
    B = identity(n) * t - A
    for prec in (precision, min(precision, ESCALATED_PRECISION)):
        low = _le(bracket_rho_r(B, n - 2, prec), t)
        high = _le(bracket_rho_r(B, n - 1, prec), t)
        if low is not None and high is not None:
            return low and not high
        if low is False or high is True:
            return False
    return UNDECIDED


# --- characteristic polynomial and Sturm counting ----------------------------------------


@dataclass(frozen=True)
class CharPolySignature:
    coefficients: tuple[Fraction, ...]  # highest degree first, monic
    negative_real_root_count: int


def characteristic_polynomial(A: RatMatrix) -> tuple[Fraction, ...]:
    """Coefficients of ``det(xI - A)`` (highest first) by Faddeev-LeVerrier."""
    _square(A)
    n = A.rows
    I = identity(n)
    coeffs = [Fraction(1)]
    Mk = RatMatrix._raw(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n)))
    c = Fraction(1)
    for k in range(1, n + 1):
        Mk = A @ Mk + I * c
        AM = A @ Mk
        c = -sum(AM.diagonal(), Fraction(0)) / k
        coeffs.append(c)
    return tuple(coeffs)


def _trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def _poly_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    return _trim(a) if a else [Fraction(0)]


def _derivative(p):
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def sturm_sequence(p):
    seq = [_trim(p), _trim(_derivative(p))]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _poly_rem(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_negative_roots(p) -> int:
    """Number of distinct real roots of ``p`` in ``(-inf, 0)``."""
    p = _trim(p)
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]  # divide out roots at zero
    if len(p) == 1:
        return 0
    seq = sturm_sequence(p)
    at_minus_inf = [q[0] * (-1) ** (len(q) - 1) for q in seq]
    at_zero = [q[-1] for q in seq]
    return _sign_changes(at_minus_inf) - _sign_changes(at_zero)


def negative_eigenvalue_count(A: RatMatrix) -> CharPolySignature:
    p = characteristic_polynomial(A)
    return CharPolySignature(p, count_negative_roots(p))
