"""Exact feasibility of small rational polyhedra.

Two independent engines decide whether ``{x : a_i . x (<=|=) b_i}`` is
nonempty:

* ``simplex`` - phase-one simplex with Bland's rule over Fractions.  Returns a
  feasible point, or Farkas multipliers proving infeasibility.
* ``fm`` - Fourier-Motzkin elimination with back substitution.  Exponential,
  so capped at a handful of variables; used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import dot, to_fraction, vector

LE, EQ = "<=", "="


class TooManyVariables(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = dot(self.coeffs, x)
        return lhs <= self.rhs if self.rel == LE else lhs == self.rhs


@dataclass(frozen=True)
class PolyhedralSystem:
    """Rows ``coeffs . x  rel  rhs`` with ``rel`` in ``{"<=", "="}``.

    ``>=`` rows are accepted by :meth:`build` and stored negated.
    """

    nvars: int
    rows: tuple[Constraint, ...] = ()

    @classmethod
    def build(cls, nvars: int, rows: Iterable[tuple]) -> "PolyhedralSystem":
        out = []
        for coeffs, rel, rhs in rows:
            coeffs, rhs = vector(coeffs), to_fraction(rhs)
            if len(coeffs) != nvars:
                raise ValueError(f"row has {len(coeffs)} coefficients, expected {nvars}")
            if rel == ">=":
                coeffs, rhs, rel = tuple(-c for c in coeffs), -rhs, LE
            if rel not in (LE, EQ):
                raise ValueError(f"unknown relation {rel!r}")
            out.append(Constraint(coeffs, rel, rhs))
        return cls(nvars, tuple(out))

    def contains(self, x: Sequence) -> bool:
        x = vector(x)
        return all(r.holds(x) for r in self.rows)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    # Farkas multipliers (one per row): >= 0 on "<=" rows, sum_i y_i a_i = 0, sum_i y_i b_i < 0
    certificate: tuple[Fraction, ...] | None = None
    method: str = field(default="simplex", compare=False)

    def __bool__(self):
        return self.feasible


def check_farkas(P: PolyhedralSystem, y: Sequence[Fraction]) -> bool:
    if len(y) != len(P.rows):
        return False
    for yi, row in zip(y, P.rows):
        if row.rel == LE and yi < 0:
            return False
    combo = [sum((yi * row.coeffs[j] for yi, row in zip(y, P.rows)), Fraction(0)) for j in range(P.nvars)]
    return all(c == 0 for c in combo) and sum((yi * row.rhs for yi, row in zip(y, P.rows)), Fraction(0)) < 0


def feasibility(P: PolyhedralSystem, method: str = "simplex", max_vars: int | None = None) -> Feasibility:
    """Decide nonemptiness of ``P`` exactly.

    ``max_vars`` defaults to 64 for simplex and 8 for Fourier-Motzkin.
    """
    if method == "simplex":
        cap = 64 if max_vars is None else max_vars
    elif method == "fm":
        cap = 8 if max_vars is None else max_vars
    else:
        raise ValueError(f"unknown method {method!r}")
    if P.nvars > cap:
        raise TooManyVariables(f"{P.nvars} variables exceeds the cap of {cap} for {method}")
    result = _simplex(P) if method == "simplex" else _fourier_motzkin(P)
    if result.feasible:
        assert P.contains(result.witness), "feasibility witness failed re-verification"
    elif result.certificate is not None:
        assert check_farkas(P, result.certificate), "Farkas certificate failed re-verification"
    return result


# --- phase-one simplex -------------------------------------------------------


def _sign_rows(P: PolyhedralSystem) -> dict[int, int]:
    """Rows of the form ``-c x_j <= 0`` (c > 0), keyed by variable."""
    found = {}
    for i, row in enumerate(P.rows):
        if row.rel != LE or row.rhs != 0:
            continue
        nz = [j for j, a in enumerate(row.coeffs) if a != 0]
        if len(nz) == 1 and row.coeffs[nz[0]] < 0:
            found.setdefault(nz[0], i)
    return found


def _simplex(P: PolyhedralSystem) -> Feasibility:
    n = P.nvars
    if not P.rows:
        return Feasibility(True, tuple(Fraction(0) for _ in range(n)))
    # variables with an explicit sign row get one column and the row is dropped;
    # free variables are split as x = x+ - x-
    sign = _sign_rows(P)
    kept = [i for i in range(len(P.rows)) if i not in sign.values()]
    cols = []  # (variable, +1 or -1)
    for j in range(n):
        cols.append((j, 1))
        if j not in sign:
            cols.append((j, -1))
    slack_of = {}
    for i in kept:
        if P.rows[i].rel == LE:
            slack_of[i] = len(cols) + len(slack_of)
    nstruct = len(cols) + len(slack_of)
    m = len(kept)
    ncols = nstruct + m
    sigma = []
    T = []
    for r, i in enumerate(kept):
        row = P.rows[i]
        s = -1 if row.rhs < 0 else 1
        sigma.append(s)
        line = [Fraction(0)] * (ncols + 1)
        for c, (j, e) in enumerate(cols):
            line[c] = s * e * row.coeffs[j]
        if i in slack_of:
            line[slack_of[i]] = Fraction(s)
        line[nstruct + r] = Fraction(1)
        line[ncols] = s * row.rhs
        T.append(line)
    basis = [nstruct + r for r in range(m)]
    # reduced costs of the phase-one objective (sum of artificials), kept as a tableau row
    obj = [-sum((T[r][c] for r in range(m)), Fraction(0)) for c in range(nstruct)]
    obj += [Fraction(0)] * m + [-sum((T[r][ncols] for r in range(m)), Fraction(0))]

    while True:
        entering = next((c for c in range(ncols) if obj[c] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for r in range(m):
            a = T[r][entering]
            if a > 0:
                ratio = T[r][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        # phase one is bounded below by zero, so an entering column always has a positive entry
        assert leave is not None
        piv = T[leave][entering]
        T[leave] = [x / piv for x in T[leave]]
        for r in range(m):
            if r != leave and T[r][entering] != 0:
                f = T[r][entering]
                T[r] = [a - f * b for a, b in zip(T[r], T[leave])]
        f = obj[entering]
        obj = [a - f * b for a, b in zip(obj, T[leave])]
        basis[leave] = entering

    if obj[ncols] == 0:
        z = [Fraction(0)] * ncols
        for r, b in enumerate(basis):
            z[b] = T[r][ncols]
        x = [Fraction(0)] * n
        for c, (j, e) in enumerate(cols):
            x[j] += e * z[c]
        return Feasibility(True, tuple(x))
    # reduced cost of artificial r is 1 - pi_r
    y = [Fraction(0)] * len(P.rows)
    for r, i in enumerate(kept):
        y[i] = -sigma[r] * (1 - obj[nstruct + r])
    # a dropped sign row -c x_j <= 0 absorbs what is left in column j
    for j, i in sign.items():
        left = sum((y[k] * P.rows[k].coeffs[j] for k in kept), Fraction(0))
        y[i] = left / -P.rows[i].coeffs[j]
    return Feasibility(False, certificate=tuple(y))


# --- Fourier-Motzkin -----------------------------------------------------------


def _normalise(coeffs, rhs):
    # scale so the first nonzero coefficient has magnitude one; makes duplicate rows identical
    lead = next((c for c in coeffs if c != 0), None)
    if lead is None:
        return coeffs, rhs
    s = abs(lead)
    return tuple(c / s for c in coeffs), rhs / s


def _fourier_motzkin(P: PolyhedralSystem, max_rows: int = 200_000) -> Feasibility:
    n = P.nvars
    rows = []
    for r in P.rows:
        rows.append((r.coeffs, r.rhs))
        if r.rel == EQ:
            rows.append((tuple(-c for c in r.coeffs), -r.rhs))
    stages = []
    current = {_normalise(c, b) for c, b in rows}
    for k in reversed(range(n)):
        stages.append(sorted(current))
        pos = [(c, b) for c, b in current if c[k] > 0]
        neg = [(c, b) for c, b in current if c[k] < 0]
        nxt = {(c, b) for c, b in current if c[k] == 0}
        for cp, bp in pos:
            for cq, bq in neg:
                sp, sq = 1 / cp[k], -1 / cq[k]
                coeffs = tuple(sp * x + sq * y for x, y in zip(cp, cq))
                nxt.add(_normalise(coeffs, sp * bp + sq * bq))
        if len(nxt) > max_rows:
            raise TooManyVariables("Fourier-Motzkin row explosion")
        current = nxt
    if any(b < 0 for c, b in current):
        return Feasibility(False, method="fm")

    x = [Fraction(0)] * n
    for k, stage in zip(range(n), reversed(stages)):
        lo = hi = None
        for c, b in stage:
            if any(c[j] != 0 for j in range(k + 1, n)):
                continue
            rest = b - sum((c[j] * x[j] for j in range(k)), Fraction(0))
            if c[k] > 0:
                bound = rest / c[k]
                hi = bound if hi is None else min(hi, bound)
            elif c[k] < 0:
                bound = rest / c[k]
                lo = bound if lo is None else max(lo, bound)
        if lo is not None and lo > 0:
            x[k] = lo
        elif hi is not None and hi < 0:
            x[k] = hi
        else:
            x[k] = Fraction(0)
    return Feasibility(True, tuple(x), method="fm")


__all__ = [
    "LE",
    "EQ",
    "Constraint",
    "PolyhedralSystem",
    "Feasibility",
    "TooManyVariables",
    "feasibility",
    "check_farkas",
]
