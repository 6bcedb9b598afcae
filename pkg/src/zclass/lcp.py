"""Small linear complementarity problems, solved by support enumeration.

LCP(A, q): find ``x >= 0`` with ``y = A x + q >= 0`` and ``x^T y = 0``.
Each support S fixes ``x_i = 0`` off S and ``y_i = 0`` on S; the resulting
linear system is solved exactly.  Supports whose principal block is singular
are handed to the polyhedral feasibility engine and reported as degenerate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import DimensionError, RatMatrix, det, dot, solve, vector
from .polyhedra import Feasibility, PolyhedralSystem, feasibility

MAX_LCP_DIM = 10


@dataclass(frozen=True)
class LCPInstance:
    A: RatMatrix
    q: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.A.is_square or len(self.q) != self.A.rows:
            raise DimensionError("LCP needs a square A and q of matching length")
        object.__setattr__(self, "q", vector(self.q))

    @property
    def n(self) -> int:
        return self.A.rows

    def w(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(a + b for a, b in zip(self.A @ x, self.q))

    def is_feasible_point(self, x) -> bool:
        x = vector(x)
        return all(v >= 0 for v in x) and all(v >= 0 for v in self.w(x))

    def is_solution(self, x) -> bool:
        x = vector(x)
        return self.is_feasible_point(x) and dot(x, self.w(x)) == 0


@dataclass(frozen=True)
class LCPSolution:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    supports: tuple[tuple[int, ...], ...]
    degenerate: bool = False


@dataclass(frozen=True)
class LCPOutcome:
    feasible: bool
    feasible_point: tuple[Fraction, ...] | None
    solutions: tuple[LCPSolution, ...] = field(default=())

    @property
    def solvable(self) -> bool:
        return bool(self.solutions)

    def to_json(self):
        from .io import jsonable

        return {
            "feasible": self.feasible,
            "feasible_point": jsonable(self.feasible_point),
            "solutions": [
                {"x": jsonable(s.x), "y": jsonable(s.y), "supports": [list(S) for S in s.supports], "degenerate": s.degenerate}
                for s in self.solutions
            ],
        }


def _unit(n, i):
    return tuple(Fraction(int(k == i)) for k in range(n))


def feasible_region(inst: LCPInstance) -> PolyhedralSystem:
    """FEA(A, q) as ``{x : x >= 0, A x + q >= 0}``."""
    n = inst.n
    rows = [(_unit(n, i), ">=", 0) for i in range(n)]
    rows += [(inst.A.row(i), ">=", -inst.q[i]) for i in range(n)]
    return PolyhedralSystem.build(n, rows)


def supports(n: int):
    for k in range(n + 1):
        yield from itertools.combinations(range(n), k)


def _support_system(inst: LCPInstance, S, extra=()):
    """x_i = 0 off S, y_i = 0 on S, x_S >= 0, y off S >= 0."""
    n = inst.n
    A, q = inst.A, inst.q
    rows = []
    for i in range(n):
        if i in S:
            rows.append((_unit(n, i), ">=", 0))
            rows.append((A.row(i), "=", -q[i]))
        else:
            rows.append((_unit(n, i), "=", 0))
            rows.append((A.row(i), ">=", -q[i]))
    rows.extend(extra)
    return PolyhedralSystem.build(n, rows)


def _reduced_support_system(inst: LCPInstance, S, extra=()):
    """The support system in the variables x_S only."""
    k = len(S)
    rows = [(_unit(k, a), ">=", 0) for a in range(k)]
    for i in range(inst.n):
        coeffs = tuple(inst.A[i, j] for j in S)
        rows.append((coeffs, "=" if i in S else ">=", -inst.q[i]))
    rows.extend(extra)
    return PolyhedralSystem.build(k, rows)


def _lift(n, S, xs):
    full = [Fraction(0)] * n
    for i, v in zip(S, xs):
        full[i] = v
    return tuple(full)


def solve_enumerate(inst: LCPInstance) -> LCPOutcome:
    n = inst.n
    if n > MAX_LCP_DIM:
        raise DimensionError(f"support enumeration is capped at n = {MAX_LCP_DIM}")
    fea = feasibility(feasible_region(inst))
    found: dict[tuple, list] = {}
    degenerate: dict[tuple, bool] = {}
    for S in supports(n):
        x = None
        degen = False
        if S:
            block = inst.A.take(S, S)
            if det(block) != 0:
                full = _lift(n, S, solve(block, [-inst.q[i] for i in S]))
                if inst.is_feasible_point(full):
                    x = full
            else:
                res = feasibility(_reduced_support_system(inst, S))
                if res.feasible:
                    x, degen = _lift(n, S, res.witness), True
        elif all(v >= 0 for v in inst.q):
            x = tuple(Fraction(0) for _ in range(n))
        if x is None:
            continue
        assert inst.is_solution(x), "enumerated point is not complementary"
        found.setdefault(x, []).append(S)
        degenerate[x] = degenerate.get(x, False) or degen
    sols = tuple(LCPSolution(x, inst.w(x), tuple(Ss), degenerate[x]) for x, Ss in found.items())
    return LCPOutcome(fea.feasible, fea.witness, sols)


# --- matrix properties ------------------------------------------------------------------


def is_R0(A: RatMatrix) -> tuple[bool, tuple[Fraction, ...] | None]:
    """LCP(A, 0) has only the zero solution.

    For each nonempty support the homogeneous system is normalised by
    ``sum(x_S) = 1``; a feasible point is a nonzero solution.
    """
    n = A.rows
    if n > MAX_LCP_DIM:
        raise DimensionError(f"capped at n = {MAX_LCP_DIM}")
    inst = LCPInstance(A, [0] * n)
    for S in supports(n):
        if not S:
            continue
        norm = (tuple(Fraction(1) for _ in S), "=", 1)
        res = feasibility(_reduced_support_system(inst, S, [norm]))
        if res.feasible:
            x = _lift(n, S, res.witness)
            assert inst.is_solution(x)
            return False, x
    return True, None


def is_semimonotone(A: RatMatrix) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Every ``0 != x >= 0`` has some k with ``x_k > 0`` and ``(A x)_k >= 0``.

    A violation with support S is scaled so that ``x_S >= 1`` and
    ``(A x)_k <= -1`` on S.
    """
    n = A.rows
    if n > 8:
        raise DimensionError("semimonotonicity test is capped at n = 8")
    for S in supports(n):
        if not S:
            continue
        k = len(S)
        sub = A.take(S, S)
        rows = [(_unit(k, i), ">=", 1) for i in range(k)]
        rows += [(sub.row(i), "<=", -1) for i in range(k)]
        res = feasibility(PolyhedralSystem.build(k, rows))
        if res.feasible:
            x = [Fraction(0)] * n
            for i, v in zip(S, res.witness):
                x[i] = v
            return False, tuple(x)
    return True, None


def q0_necessary_witness(A: RatMatrix) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Look for ``0 != y >= 0`` with ``A^T y <= 0`` (normalised by ``sum y = 1``).

    Such a y must exist for any matrix that is Q0 but not Q.
    """
    n = A.rows
    if n > 8:
        raise DimensionError("capped at n = 8")
    At = A.T
    rows = [(_unit(n, i), ">=", 0) for i in range(n)]
    rows.append((tuple(Fraction(1) for _ in range(n)), "=", 1))
    rows += [(At.row(i), "<=", 0) for i in range(n)]
    res = feasibility(PolyhedralSystem.build(n, rows))
    return (True, res.witness) if res.feasible else (False, None)


__all__ = [
    "LCPInstance",
    "LCPOutcome",
    "LCPSolution",
    "Feasibility",
    "PolyhedralSystem",
    "feasibility",
    "feasible_region",
    "is_R0",
    "is_semimonotone",
    "q0_necessary_witness",
    "solve_enumerate",
    "supports",
]
