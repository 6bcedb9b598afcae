"""Constructors, seeded random generators and exploratory probes.

Every generator is deterministic in ``(seed, label, n, index)``: instance k
is drawn from its own ``random.Random`` seeded with that tuple, so instances
can be produced in any order (or in parallel) and still agree.  Each emitted
matrix is re-checked by :mod:`zclass.classify` before it is returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import classify
from .geninv import BlockF0Form, NotSingularF0Form, group_inverse, validate_singular_f0
from .linalg import (
    DimensionError,
    RatMatrix,
    comparison_matrix,
    det,
    identity,
    inverse,
    is_irreducible,
    to_fraction,
    vector,
)

DEFAULT_NUM_BOUND = 9
DEFAULT_DEN_BOUND = 4
DEFAULT_BUDGET = 4000


class Reject(ValueError):
    """A construction's preconditions fail; ``reason`` names the failed condition."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class BudgetExhausted(RuntimeError):
    def __init__(self, label, n, attempts, stats):
        super().__init__(f"no {label} instance of order {n} after {attempts} attempts; rejections: {stats}")
        self.stats = stats


# --- deterministic constructions ---------------------------------------------------------


@dataclass(frozen=True)
class TypeDSpec:
    a: tuple[Fraction, ...]

    def __post_init__(self):
        a = vector(self.a)
        if not a:
            raise ValueError("need at least one parameter")
        if any(x >= y for x, y in zip(a, a[1:])):
            raise ValueError("type-D parameters must be strictly increasing")
        object.__setattr__(self, "a", a)


def make_type_d(a: Sequence | TypeDSpec) -> RatMatrix:
    """``D[i][j] = a[min(i, j)]`` for strictly increasing a."""
    spec = a if isinstance(a, TypeDSpec) else TypeDSpec(tuple(a))
    a = spec.a
    n = len(a)
    return RatMatrix._raw(tuple(tuple(a[min(i, j)] for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class BorderSpec:
    A: RatMatrix
    alpha: Fraction | None = None  # None means the midpoint of (gamma, delta)


def border_interval(A: RatMatrix) -> tuple[Fraction, Fraction]:
    """``(gamma, delta)`` for bordering an invertible M-matrix A."""
    if not classify.is_invertible_M(A):
        raise Reject("A is not an invertible M-matrix")
    K = inverse(A)
    q = sum((x for r in K for x in r), Fraction(0))
    t = min(sum(K.col(j), Fraction(0)) for j in range(K.cols))
    if q == t:
        raise Reject("q equals the minimum column sum; the interval is empty")
    return -1 / (q - t), -1 / q


def border_m_to_n(A: RatMatrix | BorderSpec, alpha=None) -> RatMatrix:
    """``[[A, -e], [alpha e^T, 1]]`` with alpha inside ``(gamma, delta)``."""
    if isinstance(A, BorderSpec):
        A, alpha = A.A, A.alpha
    gamma, delta = border_interval(A)
    alpha = (gamma + delta) / 2 if alpha is None else to_fraction(alpha)
    if not gamma < alpha < delta:
        raise Reject(f"alpha = {alpha} is outside ({gamma}, {delta})")
    n = A.rows
    rows = [list(A.row(i)) + [Fraction(-1)] for i in range(n)]
    rows.append([alpha] * n + [Fraction(1)])
    M = RatMatrix(rows)
    assert all(x < 0 for r in inverse(M) for x in r), "bordered matrix inverse is not strictly negative"
    assert classify.is_N(M), "bordered matrix is not an N-matrix"
    return M


def make_singular_f0(A: RatMatrix, b, c) -> BlockF0Form:
    """Assemble ``[[A, b], [c^T, 0]]`` after checking it is a singular F0 matrix."""
    form = BlockF0Form(A, vector(b), vector(c), Fraction(0))
    try:
        validate_singular_f0(form)
    except NotSingularF0Form as exc:
        raise Reject(str(exc)) from exc
    return form


# --- random entries ------------------------------------------------------------------------


def _pos(rng, num=DEFAULT_NUM_BOUND, den=DEFAULT_DEN_BOUND) -> Fraction:
    return Fraction(rng.randint(1, num), rng.randint(1, den))


def _any(rng, num=DEFAULT_NUM_BOUND, den=DEFAULT_DEN_BOUND) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def _offdiag(rng, density=0.6) -> Fraction:
    return -_pos(rng) if rng.random() < density else Fraction(0)


def _product(xs):
    p = Fraction(1)
    for x in xs:
        p *= x
    return p


def _assemble(A: RatMatrix, b, c, d) -> RatMatrix:
    n = A.rows
    return RatMatrix([list(A.row(i)) + [b[i]] for i in range(n)] + [list(c) + [d]])


def rand_z(rng, n):
    return RatMatrix([[_any(rng) if i == j else _offdiag(rng) for j in range(n)] for i in range(n)])


def rand_invertible_m(rng, n):
    off = [[_offdiag(rng) if i != j else Fraction(0) for j in range(n)] for i in range(n)]
    for i in range(n):
        off[i][i] = -sum(off[i], Fraction(0)) + _pos(rng)
    return RatMatrix(off)


def rand_cycle_n0(rng, n):
    """``D - W`` with W a weighted n-cycle: proper principal submatrices are
    triangular, so the matrix is N0 exactly when ``prod(d) < prod(w)``."""
    order = list(range(n))
    rng.shuffle(order)
    w = [_pos(rng) for _ in range(n)]
    d = [Fraction(0) if rng.random() < 0.5 else _pos(rng) for _ in range(n)]
    if _product(d) >= _product(w):
        d[rng.randrange(n)] = Fraction(0)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k in range(n):
        rows[order[k]][order[(k + 1) % n]] = -w[k]
    for i in range(n):
        rows[i][i] = d[i]
    return RatMatrix(rows)


def rand_n0(rng, n):
    if n == 1:
        return RatMatrix([[-_pos(rng)]])
    # bordering a 1x1 block always has q = t, so order 2 comes from the cycle family
    if n == 2 or rng.random() < 0.5:
        return rand_cycle_n0(rng, n)
    return border_m_to_n(rand_invertible_m(rng, n - 1))


def rand_f0_nonsingular(rng, n):
    A = rand_n0(rng, n - 1)
    b = [_offdiag(rng, 0.4) for _ in range(n - 1)]
    c = [_offdiag(rng, 0.4) for _ in range(n - 1)]
    d = Fraction(0) if rng.random() < 0.3 else _pos(rng)
    return _assemble(A, b, c, d)


def rand_f0_singular_reducible(rng, n):
    A = rand_n0(rng, n - 1)
    v = [_offdiag(rng, 0.7) for _ in range(n - 1)]
    zero = [Fraction(0)] * (n - 1)
    return _assemble(A, v, zero, Fraction(0)) if rng.random() < 0.5 else _assemble(A, zero, v, Fraction(0))


def rand_f0_singular_irreducible_3x3(rng, n=3):
    """The irreducible shapes left by the 2x2 N0 case analysis."""
    be, ga, x, y = -_pos(rng), -_pos(rng), -_pos(rng), -_pos(rng)
    p = _pos(rng)
    shape = rng.randrange(4)
    if shape == 0:
        rows = [[0, be, x], [ga, 0, 0], [y, 0, 0]]
    elif shape == 1:
        rows = [[0, be, 0], [ga, 0, x], [0, y, 0]]
    elif shape == 2:
        rows = [[0, be, 0], [ga, p, x], [0, y, 0]]
    else:
        rows = [[p, be, x], [ga, 0, 0], [y, 0, 0]]
    return RatMatrix(rows)


def rand_f0_singular_irreducible(rng, n):
    """Orthogonality ``c^T A^{-1} b = 0`` with ``A^{-1} <= 0`` forces the supports
    of c and b onto a zero block of ``A^{-1}``; cycle N0 matrices supply such zeros."""
    if n == 3:
        return rand_f0_singular_irreducible_3x3(rng)
    m = n - 1
    A = rand_cycle_n0(rng, m)
    K = inverse(A)
    rows_c = [rng.randrange(m)] if rng.random() < 0.7 else [i for i in range(m) if rng.random() < 0.4] or [0]
    cols_b = [j for j in range(m) if all(K[i, j] == 0 for i in rows_c)]
    if not cols_b:
        return None
    cols_b = rng.sample(cols_b, 1 if rng.random() < 0.7 else rng.randint(1, len(cols_b)))
    b = [-_pos(rng) if j in cols_b else Fraction(0) for j in range(m)]
    c = [-_pos(rng) if i in rows_c else Fraction(0) for i in range(m)]
    return _assemble(A, b, c, Fraction(0))


def rand_h(rng, n):
    rows = [[_any(rng) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        s = sum((abs(x) for j, x in enumerate(rows[i]) if j != i), Fraction(0)) + _pos(rng)
        rows[i][i] = s if rng.random() < 0.5 else -s
    return RatMatrix(rows)


def _increasing(rng, k, lo, hi):
    pool = set()
    while len(pool) < k:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, DEFAULT_DEN_BOUND))
        if (lo <= 0 or x > 0) and (hi >= 0 or x < 0):
            pool.add(x)
    return sorted(pool)


def rand_type_d_inv_m(rng, n):
    return make_type_d(_increasing(rng, n, 1, 3 * DEFAULT_NUM_BOUND))


def rand_type_d_inv_n0(rng, n):
    return make_type_d(_increasing(rng, n, -3 * DEFAULT_NUM_BOUND, -1))


def rand_type_d_inv_f0(rng, n):
    return make_type_d(_increasing(rng, n - 1, -3 * DEFAULT_NUM_BOUND, -1) + [_pos(rng)])


def _singular(M):
    return det(M) == 0


GENERATORS: dict[str, tuple[Callable, Callable[[RatMatrix], bool], int]] = {
    # label: (draw, accept, minimum order)
    "Z": (rand_z, classify.is_Z, 1),
    "InvertibleM": (rand_invertible_m, classify.is_invertible_M, 1),
    "N0": (rand_n0, lambda M: classify.is_N0(M) and inverse(M).is_nonpositive(), 1),
    "F0": (rand_f0_nonsingular, lambda M: not _singular(M) and classify.is_F0(M), 3),
    "F0-singular-reducible": (
        rand_f0_singular_reducible,
        lambda M: _singular(M) and not is_irreducible(M) and classify.is_F0(M),
        3,
    ),
    "F0-singular-irreducible-3x3": (
        rand_f0_singular_irreducible_3x3,
        lambda M: M.rows == 3 and _singular(M) and is_irreducible(M) and classify.is_F0(M),
        3,
    ),
    "F0-singular-irreducible": (
        rand_f0_singular_irreducible,
        lambda M: _singular(M) and is_irreducible(M) and classify.is_F0(M),
        3,
    ),
    "H": (rand_h, classify.is_H, 1),
    "TypeD-invN0": (rand_type_d_inv_n0, lambda M: classify.is_type_D(M) and classify.is_inverse_N0(M), 1),
    "TypeD-invF0": (rand_type_d_inv_f0, lambda M: classify.is_type_D(M) and classify.is_inverse_F0(M), 3),
    "TypeD-invM": (rand_type_d_inv_m, lambda M: classify.is_type_D(M) and classify.is_inverse_M(M), 1),
}

LABELS = tuple(GENERATORS)


def instance_rng(seed, label, n, index) -> random.Random:
    return random.Random(f"{seed}:{label}:{n}:{index}")


def rand_instance(label: str, n: int, seed: int, index: int, budget: int = DEFAULT_BUDGET) -> RatMatrix:
    try:
        draw, accept, min_n = GENERATORS[label]
    except KeyError:
        raise ValueError(f"unknown label {label!r}; choose from {', '.join(LABELS)}") from None
    if n < min_n:
        raise DimensionError(f"{label} needs order >= {min_n}")
    if label == "F0-singular-irreducible-3x3" and n != 3:
        raise DimensionError("this family has order 3")
    rng = instance_rng(seed, label, n, index)
    stats = {"draw failed": 0, "class check failed": 0}
    for _ in range(budget):
        M = draw(rng, n)
        if M is None:
            stats["draw failed"] += 1
        elif accept(M):
            return M
        else:
            stats["class check failed"] += 1
    raise BudgetExhausted(label, n, budget, stats)


def rand_instances(label: str, n: int, seed: int, count: int, budget: int = DEFAULT_BUDGET) -> list[RatMatrix]:
    return [rand_instance(label, n, seed, k, budget) for k in range(count)]


# --- probes --------------------------------------------------------------------------------


@dataclass
class ProbeReport:
    probe: str
    seed: int
    n: int
    trials: int
    skipped: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    tally: dict[str, int] = field(default_factory=dict)

    def to_json(self):
        from .io import jsonable

        return {
            "probe": self.probe,
            "seed": self.seed,
            "n": self.n,
            "trials": self.trials,
            "skipped": self.skipped,
            "tally": dict(sorted(self.tally.items())),
            "counterexamples": jsonable(self.counterexamples),
        }


def reverse_ostrowski_violation(A: RatMatrix):
    """First ``(i, j)`` with ``(M_A^{-1})_{ij} > |A^{-1}|_{ij}``, or None.

    Raises ZeroDivisionError when A or its comparison matrix is singular.
    """
    lhs = inverse(comparison_matrix(A))
    rhs = inverse(A).abs()
    for i in range(A.rows):
        for j in range(A.cols):
            if lhs[i, j] > rhs[i, j]:
                return (i, j), lhs[i, j], rhs[i, j]
    return None


def _rand_z_negative_diagonal(rng, n):
    A = rand_z(rng, n)
    k = rng.randrange(n)
    if A[k, k] >= 0:
        rows = [list(r) for r in A]
        rows[k][k] = -_pos(rng)
        A = RatMatrix(rows)
    return A


def probe_reverse_ostrowski(seed: int, trials: int, n: int = 3) -> ProbeReport:
    """Test ``M_A^{-1} <= |A^{-1}|`` on Z-matrices with a negative diagonal entry."""
    if not 1 <= n <= 6:
        raise DimensionError("probe supports 1 <= n <= 6")
    report = ProbeReport("reverse-ostrowski", seed, n, trials)
    for k in range(trials):
        A = _rand_z_negative_diagonal(instance_rng(seed, "reverse-ostrowski", n, k), n)
        try:
            found = reverse_ostrowski_violation(A)
        except ZeroDivisionError:
            report.skipped += 1
            continue
        key = "holds" if found is None else "violated"
        report.tally[key] = report.tally.get(key, 0) + 1
        if found is not None:
            (i, j), lhs, rhs = found
            report.counterexamples.append({"trial": k, "matrix": A, "entry": [i, j], "lhs": lhs, "rhs": rhs})
    return report


def fan_pattern(A: RatMatrix) -> dict[str, bool]:
    """Class membership of ``A - I``, ``A`` and ``I - A^{-1}`` (A invertible)."""
    I = identity(A.rows)
    return {
        "A-I in F0": classify.is_F0(A - I),
        "A in F0": classify.is_F0(A),
        "I-A^-1 in F0": classify.is_F0(I - inverse(A)),
    }


def probe_fan_f0(seed: int, trials: int, n: int = 3) -> ProbeReport:
    """Explore the Fan equivalence for F0 matrices; nothing is asserted.

    Trial k draws an F0 matrix B and evaluates the pattern at ``A = B + I``
    (forward: does ``A - I`` in F0 give the other two?) and at ``A = B``
    (converse: do ``A`` and ``I - A^{-1}`` in F0 give ``A - I``?).
    """
    if n < 3:
        raise DimensionError("F0 needs order >= 3")
    report = ProbeReport("fan-f0", seed, n, trials)
    I = identity(n)
    for k in range(trials):
        B = rand_instance("F0", n, seed, k)
        for direction, A in (("forward", B + I), ("converse", B)):
            if det(A) == 0:
                report.skipped += 1
                continue
            pat = fan_pattern(A)
            key = direction + ":" + "".join("1" if v else "0" for v in pat.values())
            report.tally[key] = report.tally.get(key, 0) + 1
            if direction == "forward":
                broken = pat["A-I in F0"] and not (pat["A in F0"] and pat["I-A^-1 in F0"])
            else:
                broken = pat["A in F0"] and pat["I-A^-1 in F0"] and not pat["A-I in F0"]
            if broken:
                report.counterexamples.append({"trial": k, "direction": direction, "matrix": A, "pattern": pat})
    return report


def probe_group_inverse_sign(seed: int, trials: int, n: int = 4) -> ProbeReport:
    """Record whether ``M^# <= 0`` on irreducible singular F0 matrices of order n."""
    report = ProbeReport("group-inverse-sign", seed, n, trials)
    for k in range(trials):
        try:
            M = rand_instance("F0-singular-irreducible", n, seed, k)
        except BudgetExhausted:
            report.skipped += 1
            continue
        X = group_inverse(M).ginv
        key = "nonpositive" if X.is_nonpositive() else "has positive entry"
        report.tally[key] = report.tally.get(key, 0) + 1
        if not X.is_nonpositive():
            report.counterexamples.append({"trial": k, "matrix": M, "group_inverse": X})
    return report


__all__ = [
    "BorderSpec",
    "BudgetExhausted",
    "GENERATORS",
    "LABELS",
    "ProbeReport",
    "Reject",
    "TypeDSpec",
    "border_interval",
    "border_m_to_n",
    "fan_pattern",
    "instance_rng",
    "make_singular_f0",
    "make_type_d",
    "probe_fan_f0",
    "probe_group_inverse_sign",
    "probe_reverse_ostrowski",
    "rand_instance",
    "rand_instances",
    "reverse_ostrowski_violation",
]
