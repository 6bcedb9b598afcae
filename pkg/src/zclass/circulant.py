"""3x3 circulant matrices and their class regions in the eigenvalue plane.

A circulant ``alpha0 I + alpha1 P + alpha2 P^2`` has the eigenvalue
``z = a + i b`` with ``a = alpha0 - (alpha1 + alpha2)/2`` and
``b = (sqrt(3)/2)(alpha1 - alpha2)``.  Points are stored as ``(a, t)`` with
``t = sqrt(3) b``, so every region inequality is a rational comparison.

The inverse of a nonsingular circulant is the circulant with entries
proportional to ``alpha0^2 - alpha1 alpha2``, ``alpha2^2 - alpha0 alpha1`` and
``alpha1^2 - alpha0 alpha2``; the inverse-class regions below are those sign
conditions written in ``(a, t)``.  ``literal=True`` evaluates an alternative
set of reference inequalities instead, which disagree with direct
classification for the inverse-N0 and inverse-F0 classes.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import classify
from .io import decimal_str
from .linalg import RatMatrix, to_fraction

HALF = Fraction(1, 2)
THREE_HALVES = Fraction(3, 2)

DEFAULT_A_RANGE = (Fraction(-2), Fraction(3))
DEFAULT_T_RANGE = (Fraction(-3), Fraction(3))
DEFAULT_STEP = Fraction(1, 4)


class UnsupportedRegion(ValueError):
    pass


@dataclass(frozen=True)
class CirculantParams:
    alpha0: Fraction
    alpha1: Fraction
    alpha2: Fraction
    trace_class: int | None = None

    def __post_init__(self):
        for name in ("alpha0", "alpha1", "alpha2"):
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.trace_class is not None:
            if self.trace_class not in (1, -1):
                raise ValueError("trace_class must be +1 or -1")
            if self.alpha0 + self.alpha1 + self.alpha2 != self.trace_class:
                raise ValueError(f"alpha0 + alpha1 + alpha2 != {self.trace_class}")

    def as_tuple(self):
        return (self.alpha0, self.alpha1, self.alpha2)


@dataclass(frozen=True)
class CirculantPoint:
    """``z = a + i t / sqrt(3)``."""

    a: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "t", to_fraction(self.t))


@dataclass(frozen=True)
class RegionVerdict:
    label: str
    in_region: bool
    boundary: bool

    def to_json(self):
        return {"label": self.label, "in_region": self.in_region, "boundary": self.boundary}


def build_circulant(p: CirculantParams) -> RatMatrix:
    a0, a1, a2 = p.as_tuple()
    return RatMatrix._raw(((a0, a1, a2), (a2, a0, a1), (a1, a2, a0)))


def is_circulant(A: RatMatrix) -> bool:
    if A.shape != (3, 3):
        return False
    return A == build_circulant(CirculantParams(A[0, 0], A[0, 1], A[0, 2]))


def eigen_point(p: CirculantParams) -> CirculantPoint:
    a0, a1, a2 = p.as_tuple()
    return CirculantPoint(a0 - (a1 + a2) / 2, THREE_HALVES * (a1 - a2))


def params_from_point(pt: CirculantPoint, trace_class: int) -> CirculantParams:
    if trace_class == -1:
        base = -(pt.a + 1) / 3
    elif trace_class == 1:
        base = (1 - pt.a) / 3
    else:
        raise ValueError("trace_class must be +1 or -1")
    a1 = base + pt.t / 3
    a2 = base - pt.t / 3
    return CirculantParams(trace_class - a1 - a2, a1, a2, trace_class)


# --- regions ------------------------------------------------------------------------
#
# Each region is a list of (value, relation) with relation ">" or ">=" against 0.
# The point is in the region when every comparison holds and on the boundary
# when some value is exactly 0.


def _disk(a, t, ca, ct):
    """``(a - ca)^2 + b^2`` distance to ``ca + i ct / sqrt(3)``, squared, minus 1."""
    return (a - ca) ** 2 + (t - ct) ** 2 / 3 - 1


def _f0(a, t):
    return [(a + 1 - abs(t), ">"), (a - HALF, ">="), (-_disk(a, t, 1, 0), ">")]


def _n0(a, t):
    return [(a - HALF, ">="), (a + 1 - abs(t), ">="), (_disk(a, t, 1, 0), ">=")]


def _inverse_n0(a, t):
    # A <= 0, alpha0^2 <= alpha1 alpha2, both off-diagonal cofactors >= 0
    return [
        (a + 1 - abs(t), ">="),
        (HALF - a, ">="),
        (-_disk(a, t, 1, 0), ">="),
        (_disk(a, t, -HALF, THREE_HALVES), ">="),
        (_disk(a, t, -HALF, -THREE_HALVES), ">="),
    ]


def _inverse_f0(a, t):
    return [
        (a - HALF, ">"),
        (-_disk(a, t, 1, 0), ">="),
        (_disk(a, t, -HALF, THREE_HALVES), ">="),
        (_disk(a, t, -HALF, -THREE_HALVES), ">="),
    ]


def _inverse_n0_literal(a, t):
    return [(_disk(a, t, HALF, THREE_HALVES), ">="), (_disk(a, t, HALF, -THREE_HALVES), ">="), (HALF - a, ">=")]


def _inverse_f0_literal(a, t):
    return [(_disk(a, t, HALF, THREE_HALVES), ">="), (_disk(a, t, HALF, -THREE_HALVES), ">="), (a - HALF, ">")]


def _m(a, t):
    return [(a - 1 - abs(t), ">=")]


def _inverse_m(a, t):
    return [(-_disk(a, t, HALF, THREE_HALVES), ">="), (-_disk(a, t, HALF, -THREE_HALVES), ">=")]


REGIONS: dict[tuple[str, int], Callable] = {
    ("F0", -1): _f0,
    ("N0", -1): _n0,
    ("InverseN0", -1): _inverse_n0,
    ("InverseF0", -1): _inverse_f0,
    ("M", 1): _m,
    ("InverseM", 1): _inverse_m,
}

LITERAL_OVERRIDES = {
    ("InverseN0", -1): _inverse_n0_literal,
    ("InverseF0", -1): _inverse_f0_literal,
}

DIRECT: dict[str, Callable[[RatMatrix], bool]] = {
    "F0": classify.is_F0,
    "N0": classify.is_N0,
    "InverseN0": classify.is_inverse_N0,
    "InverseF0": classify.is_inverse_F0,
    "M": classify.is_M,
    "InverseM": classify.is_inverse_M,
}

LABELS_BY_TRACE = {
    -1: ("F0", "InverseN0", "InverseF0", "N0"),
    1: ("M", "InverseM"),
}


def _normalise_label(label: str) -> str:
    for name in DIRECT:
        if name.lower() == str(label).lower().replace("-", "").replace("_", ""):
            return name
    raise UnsupportedRegion(f"unknown class label {label!r}")


def region(pt: CirculantPoint, label: str, trace_class: int, literal: bool = False) -> RegionVerdict:
    label = _normalise_label(label)
    key = (label, trace_class)
    if key not in REGIONS:
        raise UnsupportedRegion(f"no {label} region on the trace {trace_class:+d} class")
    fn = LITERAL_OVERRIDES.get(key, REGIONS[key]) if literal else REGIONS[key]
    conds = fn(pt.a, pt.t)
    ok = all(v > 0 if rel == ">" else v >= 0 for v, rel in conds)
    return RegionVerdict(label, ok, any(v == 0 for v, _ in conds))


def direct_verdict(pt: CirculantPoint, label: str, trace_class: int) -> bool:
    return DIRECT[_normalise_label(label)](build_circulant(params_from_point(pt, trace_class)))


# --- grids and cross-checks -----------------------------------------------------------


def lattice(a_range=DEFAULT_A_RANGE, t_range=DEFAULT_T_RANGE, step=DEFAULT_STEP) -> list[CirculantPoint]:
    step = to_fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    a_lo, a_hi = map(to_fraction, a_range)
    t_lo, t_hi = map(to_fraction, t_range)
    na = int((a_hi - a_lo) / step)
    nt = int((t_hi - t_lo) / step)
    return [CirculantPoint(a_lo + i * step, t_lo + j * step) for i in range(na + 1) for j in range(nt + 1)]


@dataclass(frozen=True)
class CrossCheckRow:
    point: CirculantPoint
    label: str
    region: bool
    direct: bool
    boundary: bool

    @property
    def agrees(self) -> bool:
        return self.region == self.direct


@dataclass
class CrossCheckReport:
    trace_class: int
    literal: bool
    rows: list[CrossCheckRow] = field(default_factory=list)

    @property
    def disagreements(self) -> list[CrossCheckRow]:
        return [r for r in self.rows if not r.agrees]

    @property
    def interior_disagreements(self) -> list[CrossCheckRow]:
        return [r for r in self.disagreements if not r.boundary]

    @property
    def ok(self) -> bool:
        return not self.interior_disagreements

    def to_json(self):
        return {
            "trace_class": self.trace_class,
            "literal": self.literal,
            "checked": len(self.rows),
            "disagreements": [
                {"a": str(r.point.a), "t": str(r.point.t), "label": r.label, "region": r.region, "direct": r.direct, "boundary": r.boundary}
                for r in self.disagreements
            ],
        }


def region_cross_check(
    grid: Iterable[CirculantPoint], trace_class: int, labels: Sequence[str] | None = None, literal: bool = False
) -> CrossCheckReport:
    labels = [_normalise_label(x) for x in (labels or LABELS_BY_TRACE[trace_class])]
    report = CrossCheckReport(trace_class, literal)
    for pt in grid:
        A = build_circulant(params_from_point(pt, trace_class))
        for label in labels:
            v = region(pt, label, trace_class, literal)
            report.rows.append(CrossCheckRow(pt, label, v.in_region, DIRECT[label](A), v.boundary))
    return report


def iter_region_grid(
    a_range=DEFAULT_A_RANGE,
    t_range=DEFAULT_T_RANGE,
    step=DEFAULT_STEP,
    labels: Sequence[str] | None = None,
    trace_class: int = -1,
    literal: bool = False,
    places: int | None = None,
) -> Iterator[str]:
    labels = [_normalise_label(x) for x in (labels or LABELS_BY_TRACE[trace_class])]
    yield "a,t,label,in_region,boundary"
    for pt in lattice(a_range, t_range, step):
        for label in labels:
            v = region(pt, label, trace_class, literal)
            yield ",".join(
                [decimal_str(pt.a, places), decimal_str(pt.t, places), label, str(v.in_region).lower(), str(v.boundary).lower()]
            )


def emit_region_grid(*args, **kwargs) -> str:
    buf = io.StringIO()
    for line in iter_region_grid(*args, **kwargs):
        buf.write(line + "\n")
    return buf.getvalue()


__all__ = [
    "CirculantParams",
    "CirculantPoint",
    "CrossCheckReport",
    "CrossCheckRow",
    "RegionVerdict",
    "UnsupportedRegion",
    "build_circulant",
    "direct_verdict",
    "eigen_point",
    "emit_region_grid",
    "is_circulant",
    "iter_region_grid",
    "lattice",
    "params_from_point",
    "region",
    "region_cross_check",
]
