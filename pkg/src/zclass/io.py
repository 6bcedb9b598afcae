"""Matrix and vector file formats.

JSON matrices look like ``{"rows": 2, "cols": 2, "data": [["1", "-1/2"], ["0", "3"]]}``.
Entries are integer or ``p/q`` strings; plain JSON integers are accepted on
input.  CSV files hold one matrix row per line with the same entry grammar.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

from .linalg import DimensionError, RatMatrix, to_fraction, vector


class FormatError(ValueError):
    """A matrix or vector file does not follow the expected layout."""


def rat_str(x: Fraction) -> str:
    """Lowest-terms ``p/q`` string (``Fraction`` already keeps lowest terms)."""
    return str(Fraction(x))


def decimal_str(x: Fraction, places: int | None = None) -> str:
    """Decimal rendering of ``x``.

    Exact when the denominator has only factors 2 and 5, otherwise the ``p/q``
    form.  With ``places`` the value is rounded half-even to that many digits
    instead.
    """
    x = Fraction(x)
    if places is not None:
        n = round(x * 10**places)
        if places == 0:
            return str(n)
        sign = "-" if n < 0 else ""
        s = str(abs(n)).rjust(places + 1, "0")
        return f"{sign}{s[:-places]}.{s[-places:]}"
    d = x.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return rat_str(x)
    if x.denominator == 1:
        return str(x.numerator)
    digits = max(twos, fives)
    scaled = x * 10**digits
    assert scaled.denominator == 1
    n = scaled.numerator
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def matrix_to_dict(A: RatMatrix) -> dict[str, Any]:
    return {"rows": A.rows, "cols": A.cols, "data": [[rat_str(x) for x in r] for r in A]}


def matrix_from_dict(obj: Any) -> RatMatrix:
    if isinstance(obj, list):
        data = obj
    elif isinstance(obj, dict) and "data" in obj:
        data = obj["data"]
    else:
        raise FormatError("expected an object with a 'data' field")
    try:
        A = RatMatrix(data)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad matrix data: {exc}") from exc
    if isinstance(obj, dict):
        if obj.get("rows", A.rows) != A.rows or obj.get("cols", A.cols) != A.cols:
            raise FormatError("declared rows/cols disagree with data")
    return A


def dumps_matrix(A: RatMatrix, **extra) -> str:
    """Matrix JSON with one row per line."""
    head = {"rows": A.rows, "cols": A.cols}
    head.update({k: jsonable(v) for k, v in extra.items()})
    lines = [f"  {json.dumps(k)}: {json.dumps(v)}," for k, v in head.items()]
    rows = [json.dumps([rat_str(x) for x in r]) for r in A]
    body = ",\n".join("    " + r for r in rows)
    return "{\n" + "\n".join(lines) + '\n  "data": [\n' + body + "\n  ]\n}"


def loads_matrix(text: str) -> RatMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_dict(obj)


def read_matrix_csv(text: str) -> RatMatrix:
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    try:
        return RatMatrix(rows)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad CSV matrix: {exc}") from exc


def write_matrix_csv(A: RatMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in A:
        w.writerow([rat_str(x) for x in r])
    return buf.getvalue()


def read_matrix(path: str | Path) -> RatMatrix:
    """Load a matrix from ``.json`` or ``.csv`` (decided by suffix)."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        return read_matrix_csv(text)
    return loads_matrix(text)


def write_matrix(A: RatMatrix, path: str | Path, **extra) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(write_matrix_csv(A), encoding="utf-8")
    else:
        path.write_text(dumps_matrix(A, **extra) + "\n", encoding="utf-8")


def parse_vector(obj: Any) -> tuple[Fraction, ...]:
    """Vectors: a flat JSON list, a one-row/one-column matrix object, or ``"1,-2,3/4"``."""
    if isinstance(obj, str):
        return vector(p for p in obj.split(",") if p.strip())
    if isinstance(obj, dict):
        A = matrix_from_dict(obj)
        if A.cols == 1:
            return A.col(0)
        if A.rows == 1:
            return A.row(0)
        raise FormatError("vector object must have a single row or column")
    if isinstance(obj, list):
        if obj and isinstance(obj[0], list):
            flat = [x for r in obj for x in r]
            if not all(len(r) == 1 for r in obj) and len(obj) != 1:
                raise FormatError("nested list is not a vector")
            obj = flat
        try:
            return vector(obj)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad vector: {exc}") from exc
    raise FormatError("unrecognised vector encoding")


def read_vector(path: str | Path) -> tuple[Fraction, ...]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".csv":
        cells = [c for r in csv.reader(io.StringIO(text)) for c in r if c.strip()]
        return parse_vector(cells)
    try:
        return parse_vector(json.loads(text))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc


def jsonable(obj: Any) -> Any:
    """Recursively turn Fractions, matrices and tuples into JSON-ready values."""
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, RatMatrix):
        return matrix_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False)


__all__ = [
    "FormatError",
    "rat_str",
    "decimal_str",
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps_matrix",
    "loads_matrix",
    "read_matrix_csv",
    "write_matrix_csv",
    "read_matrix",
    "write_matrix",
    "parse_vector",
    "read_vector",
    "jsonable",
    "dumps",
    "DimensionError",
]
