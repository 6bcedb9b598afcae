"""``zclass`` command line.

Exit status: 0 on success, 1 when the input is well formed but rejected
(e.g. a matrix that is not F0 where one is required), 2 on usage, parse or
I/O errors.  Output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import circulant, classify, construct, geninv, lcp
from .io import FormatError, dumps, dumps_matrix, parse_vector, read_matrix, read_vector, write_matrix_csv
from .linalg import DimensionError, NotInvertible, SingularMatrixError, inverse, to_fraction
from .polyhedra import TooManyVariables


class DomainRejection(Exception):
    """Input parsed fine but does not belong to the required class."""


class UsageError(Exception):
    pass


# --- helpers --------------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_rational(text: str) -> Fraction:
    x = _rational(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _vector_arg(text: str):
    """A vector file (.json/.csv) or an inline list such as ``"1,-2,3/4"``."""
    if Path(text).suffix.lower() in (".json", ".csv"):
        return read_vector(text)
    try:
        return parse_vector(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad vector {text!r}: {exc}") from exc


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ZCLASS_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"ZCLASS_SEED is not an integer: {env!r}") from None


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_matrix(args, X, **extra) -> None:
    if getattr(args, "format", "json") == "csv":
        _emit(args, write_matrix_csv(X))
    else:
        _emit(args, dumps_matrix(X, **extra))


def _emit_json(args, obj) -> None:
    _emit(args, dumps(obj))


# --- subcommands ---------------------------------------------------------------------------


def cmd_classify(args):
    A = read_matrix(args.matrix)
    report = classify.classify(A).to_json()
    if args.spectral:
        if A.rows < 3:
            report["spectral_F0"] = None
        else:
            v = classify.f0_by_spectral_radius(A, args.precision)
            report["spectral_F0"] = v
    if args.eigen:
        sig = classify.negative_eigenvalue_count(A)
        report["characteristic_polynomial"] = [str(c) for c in sig.coefficients]
        report["negative_real_eigenvalues"] = sig.negative_real_root_count
    _emit_json(args, report)


def cmd_inverse(args):
    A = read_matrix(args.matrix)
    try:
        X = inverse(A)
    except SingularMatrixError:
        raise DomainRejection("matrix is singular") from None
    _emit_matrix(args, X)


def cmd_pinv(args):
    A = read_matrix(args.matrix)
    fn = geninv.moore_penrose_greville if args.method == "greville" else geninv.moore_penrose
    res = fn(A)
    _emit_matrix(args, res.pinv, method=res.method, checks=list(res.penrose_checks))


def cmd_ginv(args):
    A = read_matrix(args.matrix)
    res = geninv.group_inverse(A)
    if not res.exists:
        raise DomainRejection("no group inverse: G F is singular (null vector " + ",".join(map(str, res.certificate[1])) + ")")
    _emit_matrix(args, res.ginv, method="FRF", checks=list(geninv.group_checks(A, res.ginv)))


def cmd_lcp_solve(args):
    A = read_matrix(args.matrix)
    q = _vector_arg(args.q)
    _emit_json(args, lcp.solve_enumerate(lcp.LCPInstance(A, q)))


def cmd_lcp_props(args):
    A = read_matrix(args.matrix)
    r0, r0w = lcp.is_R0(A)
    sm, smw = lcp.is_semimonotone(A)
    q0, q0w = lcp.q0_necessary_witness(A)
    _emit_json(
        args,
        {
            "R0": r0,
            "R0_witness": r0w,
            "semimonotone": sm,
            "semimonotone_witness": smw,
            "q0_necessary_witness_exists": q0,
            "q0_necessary_witness": q0w,
        },
    )


def cmd_circulant_region(args):
    pt = circulant.CirculantPoint(args.a, args.t)
    v = circulant.region(pt, args.cls, args.trace, literal=args.literal)
    out = v.to_json()
    out.update(a=str(pt.a), t=str(pt.t), trace=args.trace, direct=circulant.direct_verdict(pt, args.cls, args.trace))
    out["params"] = [str(x) for x in circulant.params_from_point(pt, args.trace).as_tuple()]
    _emit_json(args, out)


def cmd_circulant_grid(args):
    labels = args.labels.split(",") if args.labels else None
    text = circulant.emit_region_grid(
        (args.a_min, args.a_max),
        (args.t_min, args.t_max),
        args.step,
        labels,
        args.trace,
        args.literal,
        args.decimal_places,
    )
    _emit(args, text)


def cmd_construct_type_d(args):
    try:
        spec = construct.TypeDSpec(parse_vector(args.a))
    except ValueError as exc:
        raise DomainRejection(str(exc)) from None
    _emit_matrix(args, construct.make_type_d(spec))


def cmd_construct_border(args):
    A = read_matrix(args.matrix)
    _emit_matrix(args, construct.border_m_to_n(A, args.alpha))


def cmd_construct_singular_f0(args):
    A = read_matrix(args.matrix)
    form = construct.make_singular_f0(A, _vector_arg(args.b), _vector_arg(args.c))
    _emit_matrix(args, form.assemble())


def cmd_construct_rand(args):
    mats = construct.rand_instances(args.label, args.n, _seed(args), args.count)
    _emit_json(args, {"label": args.label, "n": args.n, "seed": _seed(args), "matrices": mats})


def cmd_probe_reverse_ostrowski(args):
    _emit_json(args, construct.probe_reverse_ostrowski(_seed(args), args.trials, args.n))


def cmd_probe_fan_f0(args):
    _emit_json(args, construct.probe_fan_f0(_seed(args), args.trials, args.n))


# --- parser ----------------------------------------------------------------------------------


def _add_out(p, matrix=False):
    p.add_argument("--out", help="write to this file instead of stdout")
    if matrix:
        p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zclass", description="Exact classification and generalized inverses of Z-matrix subclasses.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="report class membership with witnesses")
    p.add_argument("--matrix", required=True)
    p.add_argument("--spectral", action="store_true", help="also run the spectral-radius F0 test")
    p.add_argument("--precision", type=_positive_rational, default=classify.DEFAULT_PRECISION)
    p.add_argument("--eigen", action="store_true", help="add characteristic polynomial and negative eigenvalue count")
    _add_out(p)
    p.set_defaults(func=cmd_classify)

    for name, fn, helptext in (
        ("inverse", cmd_inverse, "exact inverse"),
        ("ginv", cmd_ginv, "group inverse"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--matrix", required=True)
        _add_out(p, matrix=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse")
    p.add_argument("--matrix", required=True)
    p.add_argument("--method", choices=("frf", "greville"), default="frf")
    _add_out(p, matrix=True)
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("lcp", help="linear complementarity")
    lsub = p.add_subparsers(dest="action", required=True)
    s = lsub.add_parser("solve")
    s.add_argument("--matrix", required=True)
    s.add_argument("--q", required=True, help="vector file or inline list")
    _add_out(s)
    s.set_defaults(func=cmd_lcp_solve)
    s = lsub.add_parser("props")
    s.add_argument("--matrix", required=True)
    _add_out(s)
    s.set_defaults(func=cmd_lcp_props)

    p = sub.add_parser("circulant", help="3x3 circulant class regions")
    csub = p.add_subparsers(dest="action", required=True)
    s = csub.add_parser("region")
    s.add_argument("--class", dest="cls", required=True, help="f0, n0, inverse-n0, inverse-f0, m, inverse-m")
    s.add_argument("--trace", type=int, choices=(-1, 1), required=True)
    s.add_argument("--a", type=_rational, required=True)
    s.add_argument("--t", type=_rational, required=True, help="sqrt(3) times the imaginary part")
    s.add_argument("--literal", action="store_true", help="use the alternative reference inverse-class inequalities")
    _add_out(s)
    s.set_defaults(func=cmd_circulant_region)
    s = csub.add_parser("grid")
    s.add_argument("--trace", type=int, choices=(-1, 1), default=-1)
    s.add_argument("--labels", help="comma-separated labels (default: all for the trace class)")
    s.add_argument("--a-min", type=_rational, default=circulant.DEFAULT_A_RANGE[0])
    s.add_argument("--a-max", type=_rational, default=circulant.DEFAULT_A_RANGE[1])
    s.add_argument("--t-min", type=_rational, default=circulant.DEFAULT_T_RANGE[0])
    s.add_argument("--t-max", type=_rational, default=circulant.DEFAULT_T_RANGE[1])
    s.add_argument("--step", type=_positive_rational, default=circulant.DEFAULT_STEP)
    s.add_argument("--decimal-places", type=int, default=None)
    s.add_argument("--literal", action="store_true")
    _add_out(s)
    s.set_defaults(func=cmd_circulant_grid)

    p = sub.add_parser("construct", help="build matrices")
    ksub = p.add_subparsers(dest="action", required=True)
    s = ksub.add_parser("type-d")
    s.add_argument("--a", required=True, help='strictly increasing list, e.g. "-3,-2,-1,1"')
    _add_out(s, matrix=True)
    s.set_defaults(func=cmd_construct_type_d)
    s = ksub.add_parser("border")
    s.add_argument("--matrix", required=True)
    s.add_argument("--alpha", type=_rational, default=None)
    _add_out(s, matrix=True)
    s.set_defaults(func=cmd_construct_border)
    s = ksub.add_parser("singular-f0")
    s.add_argument("--matrix", required=True, help="the N0 block A")
    s.add_argument("--b", required=True)
    s.add_argument("--c", required=True)
    _add_out(s, matrix=True)
    s.set_defaults(func=cmd_construct_singular_f0)
    s = ksub.add_parser("rand")
    s.add_argument("--label", required=True, choices=construct.LABELS)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=None)
    _add_out(s)
    s.set_defaults(func=cmd_construct_rand)

    p = sub.add_parser("probe", help="randomized evidence for open questions")
    psub = p.add_subparsers(dest="action", required=True)
    for name, fn, default_n in (
        ("reverse-ostrowski", cmd_probe_reverse_ostrowski, 3),
        ("fan-f0", cmd_probe_fan_f0, 3),
    ):
        s = psub.add_parser(name)
        s.add_argument("--trials", type=int, default=100)
        s.add_argument("--seed", type=int, default=None)
        s.add_argument("--n", type=int, default=default_n)
        _add_out(s)
        s.set_defaults(func=fn)
    return parser


DOMAIN_ERRORS = (
    DomainRejection,
    DimensionError,
    NotInvertible,
    SingularMatrixError,
    construct.Reject,
    construct.BudgetExhausted,
    geninv.NotSingularF0Form,
    geninv.PreconditionError,
    circulant.UnsupportedRegion,
    TooManyVariables,
)


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _glue_negative_values(argv):
    """``--a -3,-2`` becomes ``--a=-3,-2``; argparse would read the value as a flag."""
    out = []
    for tok in argv:
        if out and _NEGATIVE_VALUE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (FormatError, OSError, UsageError, json.JSONDecodeError) as exc:
        print(f"zclass: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"zclass: rejected: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
