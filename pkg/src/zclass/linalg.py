"""Dense linear algebra over exact rationals.

Every routine here works on :class:`RatMatrix`, an immutable row-major matrix
of :class:`fractions.Fraction` entries.  Nothing is ever rounded, so sign
questions such as ``det(A) < 0`` or ``minor <= 0`` have crisp answers.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "DimensionError",
    "SingularMatrixError",
    "NotInvertible",
    "RatMatrix",
    "FullRankFactorization",
    "to_fraction",
    "vector",
    "identity",
    "zeros",
    "det",
    "principal_submatrix",
    "submatrix",
    "minor",
    "index_sets",
    "inverse",
    "solve",
    "rref",
    "rank",
    "nullspace_basis",
    "full_rank_factorization",
    "is_irreducible",
    "comparison_matrix",
    "sherman_morrison",
    "dot",
]


class DimensionError(ValueError):
    """Shapes do not fit the requested operation."""


class SingularMatrixError(ZeroDivisionError):
    """Raised when an inverse is requested for a singular matrix.

    ``det`` is always ``Fraction(0)``; it is kept as the certificate.
    """

    def __init__(self, message="matrix is singular", det=Fraction(0)):
        super().__init__(message)
        self.det = det


class NotInvertible(ArithmeticError):
    """A rank-one update ``A + u v^T`` is singular (``1 + v^T A^{-1} u == 0``)."""


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and strings like ``"-3"`` or ``"3/7"`` to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or Fraction")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RatMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        object.__setattr__(self, "_data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple) -> "RatMatrix":
        # trusted constructor: rows is already a tuple of tuples of Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "_data", rows)
        object.__setattr__(obj, "rows", len(rows))
        object.__setattr__(obj, "cols", len(rows[0]))
        return obj

    @classmethod
    def column(cls, values: Iterable) -> "RatMatrix":
        return cls([[v] for v in values])

    @classmethod
    def row_vector(cls, values: Iterable) -> "RatMatrix":
        return cls([list(values)])

    # --- access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._data[i][j]
        return self._data[key]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self._data)

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def entries(self) -> Iterator[Fraction]:
        for r in self._data:
            yield from r

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    # --- algebra ----------------------------------------------------------

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw(tuple(zip(*self._data)))

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = list(zip(*other._data))
            return RatMatrix._raw(
                tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols) for r in self._data)
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise DimensionError(f"cannot multiply {self.shape} by vector of length {len(vec)}")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self._data)

    def _elementwise(self, other, op):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return RatMatrix._raw(tuple(tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __add__(self, other):
        return self._elementwise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._elementwise(other, lambda a, b: a - b)

    def __neg__(self):
        return self.map(lambda a: -a)

    def __mul__(self, scalar):
        if isinstance(scalar, RatMatrix):
            return NotImplemented
        s = to_fraction(scalar)
        return self.map(lambda a: a * s)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = to_fraction(scalar)
        return self.map(lambda a: a / s)

    def map(self, fn) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(fn(a) for a in r) for r in self._data))

    def abs(self) -> "RatMatrix":
        return self.map(abs)

    # --- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __le__(self, other):
        """Entrywise ``<=``; comparison with 0 is allowed."""
        if other == 0:
            return all(a <= 0 for a in self.entries())
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return all(a <= b for a, b in zip(self.entries(), other.entries()))

    def __ge__(self, other):
        if other == 0:
            return all(a >= 0 for a in self.entries())
        return other <= self

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries())

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self.entries())

    def is_nonpositive(self) -> bool:
        return all(a <= 0 for a in self.entries())

    def is_tridiagonal(self) -> bool:
        return all(self._data[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if abs(i - j) >= 2)

    # --- block helpers ----------------------------------------------------

    def take(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows))

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        return RatMatrix._raw(tuple(a + b for a, b in zip(self._data, other._data)))

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise DimensionError("vstack needs equal column counts")
        return RatMatrix._raw(self._data + other._data)

    def permute(self, perm: Sequence[int]) -> "RatMatrix":
        """Symmetric permutation ``P A P^T``: entry (i, j) becomes a[perm[i], perm[j]]."""
        return self.take(perm, perm)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"RatMatrix([{body}])"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self._data]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("  ".join(c.rjust(width) for c in r) for r in cells)


def identity(n: int) -> RatMatrix:
    one, zero = Fraction(1), Fraction(0)
    return RatMatrix._raw(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))


def zeros(m: int, n: int | None = None) -> RatMatrix:
    n = m if n is None else n
    return RatMatrix._raw(tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(m)))


def _require_square(A: RatMatrix, what: str = "operation"):
    if not A.is_square:
        raise DimensionError(f"{what} needs a square matrix, got {A.rows}x{A.cols}")


def det(A: RatMatrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators, so elimination runs on Python ints
    with exact divisions.
    """
    _require_square(A, "det")
    n = A.rows
    scale = 1
    M = []
    for r in A:
        lcm = math.lcm(*(x.denominator for x in r))
        scale *= lcm
        M.append([x.numerator * (lcm // x.denominator) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row_i, row_k = M[i], M[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return Fraction(sign * M[n - 1][n - 1], scale)


def _check_index_set(S: Sequence[int], n: int) -> tuple[int, ...]:
    S = tuple(S)
    if not S:
        raise DimensionError("index set must be nonempty")
    if any(not 0 <= i < n for i in S):
        raise DimensionError(f"index out of range for dimension {n}: {S}")
    if any(a >= b for a, b in zip(S, S[1:])):
        raise DimensionError(f"index set must be strictly increasing: {S}")
    return S


def principal_submatrix(A: RatMatrix, S: Sequence[int]) -> RatMatrix:
    _require_square(A, "principal_submatrix")
    S = _check_index_set(S, A.rows)
    return A.take(S, S)


def submatrix(A: RatMatrix, rowset: Sequence[int], colset: Sequence[int]) -> RatMatrix:
    return A.take(_check_index_set(rowset, A.rows), _check_index_set(colset, A.cols))


def minor(A: RatMatrix, rowset: Sequence[int], colset: Sequence[int]) -> Fraction:
    if len(rowset) != len(colset):
        raise DimensionError("minor needs row and column sets of equal size")
    return det(submatrix(A, rowset, colset))


def index_sets(n: int, orders: Iterable[int] | None = None) -> Iterator[tuple[int, ...]]:
    """Nonempty index sets of ``range(n)``, by increasing order then lexicographically."""
    for k in orders if orders is not None else range(1, n + 1):
        yield from itertools.combinations(range(n), k)


def rref(A: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and the pivot columns."""
    M = A.tolist()
    m, n = A.rows, A.cols
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return RatMatrix._raw(tuple(tuple(row) for row in M)), tuple(pivots)


def rank(A: RatMatrix) -> int:
    return len(rref(A)[1])


def nullspace_basis(A: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : A x = 0}``, one vector per free column of the RREF."""
    R, pivots = rref(A)
    free = [j for j in range(A.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * A.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(tuple(v))
    return basis


def inverse(A: RatMatrix) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination on ``[A | I]``."""
    _require_square(A, "inverse")
    n = A.rows
    R, pivots = rref(A.hstack(identity(n)))
    if pivots[:n] != tuple(range(n)):
        raise SingularMatrixError()
    return RatMatrix._raw(tuple(r[n:] for r in R))


def solve(A: RatMatrix, b: Sequence) -> tuple[Fraction, ...]:
    """Unique solution of ``A x = b``; raises SingularMatrixError otherwise."""
    _require_square(A, "solve")
    b = vector(b)
    if len(b) != A.rows:
        raise DimensionError("right-hand side has the wrong length")
    R, pivots = rref(A.hstack(RatMatrix.column(b)))
    if tuple(pivots) != tuple(range(A.rows)):
        raise SingularMatrixError()
    return R.col(A.cols)


@dataclass(frozen=True)
class FullRankFactorization:
    F: RatMatrix
    G: RatMatrix
    r: int

    def product(self) -> RatMatrix:
        return self.F @ self.G


def full_rank_factorization(A: RatMatrix) -> FullRankFactorization:
    """``A = F G`` with F the pivot columns of A and G the nonzero RREF rows."""
    R, pivots = rref(A)
    r = len(pivots)
    if r == 0:
        raise DimensionError("the zero matrix has no full rank factorization")
    F = A.take(range(A.rows), pivots)
    G = R.take(range(r), range(A.cols))
    frf = FullRankFactorization(F, G, r)
    assert frf.product() == A
    assert rank(F) == r and rank(G) == r
    return frf


def is_irreducible(A: RatMatrix) -> bool:
    """Strong connectivity of the digraph ``i -> j`` for ``i != j, a_ij != 0``.

    A 1x1 matrix counts as irreducible.
    """
    _require_square(A, "is_irreducible")
    n = A.rows
    if n == 1:
        return True
    succ = [[j for j in range(n) if j != i and A[i, j] != 0] for i in range(n)]
    pred = [[i for i in range(n) if i != j and A[i, j] != 0] for j in range(n)]

    def reaches_all(adj):
        seen = {0}
        queue = deque([0])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == n

    # one root reaching everything forwards and backwards <=> strongly connected
    return reaches_all(succ) and reaches_all(pred)


def comparison_matrix(A: RatMatrix) -> RatMatrix:
    _require_square(A, "comparison_matrix")
    n = A.rows
    return RatMatrix._raw(tuple(tuple(abs(A[i, j]) if i == j else -abs(A[i, j]) for j in range(n)) for i in range(n)))


def sherman_morrison(Ainv: RatMatrix, u: Sequence, v: Sequence) -> RatMatrix:
    """Inverse of ``A + u v^T`` from ``A^{-1}``.

    Raises NotInvertible when ``1 + v^T A^{-1} u == 0``.
    """
    u, v = vector(u), vector(v)
    Au = Ainv @ u
    vA = Ainv.T @ v
    denom = 1 + dot(v, Au)
    if denom == 0:
        raise NotInvertible("1 + v^T A^{-1} u vanishes")
    n = Ainv.rows
    return RatMatrix._raw(
        tuple(tuple(Ainv[i, j] - Au[i] * vA[j] / denom for j in range(n)) for i in range(n))
    )
