"""Moore-Penrose and group inverses over the rationals.

Both inverses come from a full rank factorization ``A = F G``:

    A^+ = G^T (G G^T)^{-1} (F^T F)^{-1} F^T
    A^# = F (G F)^{-2} G        (exists iff G F is invertible)

Greville's column recursion gives an independent route to ``A^+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import classify
from .linalg import (
    DimensionError,
    RatMatrix,
    SingularMatrixError,
    det,
    dot,
    full_rank_factorization,
    identity,
    inverse,
    is_irreducible,
    nullspace_basis,
    rank,
    sherman_morrison,
    vector,
    zeros,
)
from .polyhedra import PolyhedralSystem, feasibility


class NotSingularF0Form(ValueError):
    """Block data does not describe a singular F0 matrix ``[[A, b], [c^T, 0]]``."""


class PreconditionError(ValueError):
    pass


def penrose_checks(A: RatMatrix, X: RatMatrix) -> tuple[bool, bool, bool, bool]:
    AX, XA = A @ X, X @ A
    return (AX @ A == A, XA @ X == X, AX.T == AX, XA.T == XA)


def group_checks(A: RatMatrix, X: RatMatrix) -> tuple[bool, bool, bool]:
    return (A @ X @ A == A, X @ A @ X == X, A @ X == X @ A)


@dataclass(frozen=True)
class PseudoInverseResult:
    pinv: RatMatrix
    method: str
    penrose_checks: tuple[bool, bool, bool, bool]


@dataclass(frozen=True)
class GroupInverseResult:
    exists: bool
    ginv: RatMatrix | None
    # existence: ("GF invertible", det(GF)); otherwise ("GF singular", null vector of GF)
    certificate: tuple


def _finish_pinv(A, X, method):
    checks = penrose_checks(A, X)
    assert all(checks), f"Penrose equations failed for {method}"
    return PseudoInverseResult(X, method, checks)


def moore_penrose(A: RatMatrix) -> PseudoInverseResult:
    if A.is_zero():
        return _finish_pinv(A, zeros(A.cols, A.rows), "FRF")
    frf = full_rank_factorization(A)
    F, G = frf.F, frf.G
    X = G.T @ inverse(G @ G.T) @ inverse(F.T @ F) @ F.T
    return _finish_pinv(A, X, "FRF")


def moore_penrose_greville(A: RatMatrix) -> PseudoInverseResult:
    """Greville's recursion, one column of A at a time."""
    cols = [A.col(j) for j in range(A.cols)]
    a1 = cols[0]
    n1 = dot(a1, a1)
    first = [x / n1 for x in a1] if n1 else [Fraction(0)] * A.rows
    Xrows = [first]  # rows of A_k^+, which is k x m
    for k in range(1, A.cols):
        ak = cols[k]
        d = [dot(r, ak) for r in Xrows]
        Ak_cols = cols[:k]
        c = [ak[i] - sum((Ak_cols[j][i] * d[j] for j in range(k)), Fraction(0)) for i in range(A.rows)]
        cc = dot(c, c)
        if cc != 0:
            b = [x / cc for x in c]
        else:
            s = 1 + dot(d, d)
            b = [sum((d[j] * Xrows[j][i] for j in range(k)), Fraction(0)) / s for i in range(A.rows)]
        Xrows = [[x - d[j] * y for x, y in zip(Xrows[j], b)] for j in range(k)] + [b]
    return _finish_pinv(A, RatMatrix(Xrows), "Greville")


def group_inverse(A: RatMatrix) -> GroupInverseResult:
    if not A.is_square:
        raise DimensionError("group inverse needs a square matrix")
    if A.is_zero():
        return GroupInverseResult(True, A, ("zero matrix", Fraction(0)))
    frf = full_rank_factorization(A)
    GF = frf.G @ frf.F
    d = det(GF)
    if d == 0:
        return GroupInverseResult(False, None, ("GF singular", nullspace_basis(GF)[0]))
    GFinv = inverse(GF)
    X = frf.F @ GFinv @ GFinv @ frf.G
    assert all(group_checks(A, X)), "group inverse equations failed"
    return GroupInverseResult(True, X, ("GF invertible", d))


# --- block results for singular F0 matrices ------------------------------------------


@dataclass(frozen=True)
class BlockF0Form:
    """``[[A, b], [c^T, d]]`` with A of order n."""

    A: RatMatrix
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    d: Fraction = Fraction(0)

    def __post_init__(self):
        n = self.A.rows
        if not self.A.is_square or len(self.b) != n or len(self.c) != n:
            raise DimensionError("block shapes do not fit")

    @classmethod
    def from_matrix(cls, M: RatMatrix) -> "BlockF0Form":
        n = M.rows - 1
        if not M.is_square or n < 1:
            raise DimensionError("need a square matrix of order >= 2")
        return cls(
            M.take(range(n), range(n)),
            tuple(M[i, n] for i in range(n)),
            tuple(M[n, j] for j in range(n)),
            M[n, n],
        )

    def assemble(self) -> RatMatrix:
        rows = [list(r) + [bi] for r, bi in zip(self.A, self.b)]
        rows.append(list(self.c) + [self.d])
        return RatMatrix(rows)

    @property
    def n(self) -> int:
        return self.A.rows

    def orthogonality(self) -> Fraction:
        """``c^T A^{-1} b``; zero together with ``d = 0`` makes the assembled matrix singular."""
        return dot(self.c, inverse(self.A) @ self.b)


def f0_block_form(M: RatMatrix) -> tuple[tuple[int, ...], BlockF0Form]:
    """Permute an F0 matrix so an N0 principal submatrix of order n-1 leads.

    Returns the permutation (new position -> old index) and the block form.
    """
    v = classify.check_F0(M)
    if not v:
        raise NotSingularF0Form(f"not an F0 matrix: {v.reason}")
    S = v.witness["index_set"]
    rest = [i for i in range(M.rows) if i not in S]
    perm = tuple(S) + tuple(rest)
    return perm, BlockF0Form.from_matrix(M.permute(perm))


def validate_singular_f0(form: BlockF0Form) -> None:
    if form.d != 0:
        raise NotSingularF0Form("d must be 0")
    if any(x > 0 for x in form.b) or any(x > 0 for x in form.c):
        raise NotSingularF0Form("b and c must be nonpositive")
    if not classify.is_N0(form.A):
        raise NotSingularF0Form("leading block is not N0")
    if form.orthogonality() != 0:
        raise NotSingularF0Form("c^T A^{-1} b != 0, so the matrix is nonsingular")
    if form.n + 1 >= 3 and not classify.is_F0(form.assemble()):
        raise NotSingularF0Form("assembled matrix is not F0")


def singular_f0_group_inverse(form: BlockF0Form, reducible: bool | None = None) -> GroupInverseResult:
    """Group inverse of ``M = [[A, b], [c^T, 0]]`` through ``M = F G``,
    ``F = [[A], [c^T]]``, ``G = [I | A^{-1} b]``.

    ``G F = A + g c^T`` with ``g = A^{-1} b`` is inverted by Sherman-Morrison;
    ``1 + c^T A^{-2} b > 0`` certifies existence.  For reducible M the closed
    block form is returned and checked to be entrywise nonpositive.
    """
    validate_singular_f0(form)
    M = form.assemble()
    actually_reducible = not is_irreducible(M)
    if reducible is not None and reducible != actually_reducible:
        raise PreconditionError(f"reducible={reducible} but the matrix is {'' if actually_reducible else 'ir'}reducible")
    A, b, c = form.A, form.b, form.c
    n = form.n
    Ainv = inverse(A)
    g = Ainv @ b
    Ainv2b = Ainv @ g
    margin = 1 + dot(c, Ainv2b)
    assert margin > 0
    if actually_reducible and all(x == 0 for x in c):
        rows = [list(Ainv.row(i)) + [Ainv2b[i]] for i in range(n)] + [[Fraction(0)] * (n + 1)]
        X = RatMatrix(rows)
    elif actually_reducible and all(x == 0 for x in b):
        cA2 = (Ainv @ Ainv).T @ c
        rows = [list(Ainv.row(i)) + [Fraction(0)] for i in range(n)] + [list(cA2) + [Fraction(0)]]
        X = RatMatrix(rows)
    else:
        GFinv = sherman_morrison(Ainv, g, c)
        F = A.vstack(RatMatrix.row_vector(c))
        G = identity(n).hstack(RatMatrix.column(g))
        X = F @ GFinv @ GFinv @ G
    assert all(group_checks(M, X)), "closed-form group inverse failed the defining equations"
    if actually_reducible:
        assert X.is_nonpositive(), "reducible singular F0 group inverse should be <= 0"
    return GroupInverseResult(True, X, ("1 + c^T A^-2 b", margin))


# --- monotonicity --------------------------------------------------------------------


def is_row_monotone(G: RatMatrix) -> tuple[bool, tuple[Fraction, ...] | None]:
    """``G x >= 0, x in R(G^T)  =>  x >= 0``.

    For each coordinate j, look for ``x = G^T y`` with ``G x >= 0`` and
    ``x_j <= -1``; such an x is returned as the witness of failure.
    """
    basis = [G.row(i) for i in range(G.rows)]
    # x = sum_k y_k basis_k with y free
    m = len(basis)
    n = G.cols
    X = RatMatrix(basis).T  # n x m: x = X y
    GX = G @ X
    for j in range(n):
        rows = [(tuple(-v for v in GX.row(i)), "<=", 0) for i in range(G.rows)]
        rows.append((X.row(j), "<=", -1))
        res = feasibility(PolyhedralSystem.build(m, rows))
        if res.feasible:
            x = X @ res.witness
            return False, x
    return True, None


def block_monotonicity_check(form: BlockF0Form) -> bool:
    """``M x <= 0, x_{n+1} = 0  =>  x >= 0`` for ``M = [[A, b], [c^T, d]]``.

    Requires an invertible leading block with ``A^{-1} <= 0``.
    """
    try:
        Ainv = inverse(form.A)
    except SingularMatrixError as exc:
        raise PreconditionError("leading block is singular") from exc
    if not Ainv.is_nonpositive():
        raise PreconditionError("leading block inverse is not entrywise nonpositive")
    M = form.assemble()
    n1 = M.cols
    last = tuple(Fraction(int(k == n1 - 1)) for k in range(n1))
    for j in range(n1 - 1):
        rows = [(M.row(i), "<=", 0) for i in range(M.rows)]
        rows.append((last, "=", 0))
        rows.append((tuple(Fraction(int(k == j)) for k in range(n1)), "<=", -1))
        if feasibility(PolyhedralSystem.build(n1, rows)).feasible:
            return False
    return True


__all__ = [
    "BlockF0Form",
    "GroupInverseResult",
    "NotSingularF0Form",
    "PreconditionError",
    "PseudoInverseResult",
    "block_monotonicity_check",
    "f0_block_form",
    "group_checks",
    "group_inverse",
    "is_row_monotone",
    "moore_penrose",
    "moore_penrose_greville",
    "penrose_checks",
    "singular_f0_group_inverse",
    "validate_singular_f0",
]
