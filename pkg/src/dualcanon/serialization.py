"""Strict JSON documents for dual and rational matrices.

A document is ``{"n": n, "part0": [[...]], "part1": [[...]]}`` where every
entry is a string ``"p"`` or ``"p/q"`` in lowest terms with ``q > 1``. Only
that canonical spelling is accepted, so parse/dump round-trips are exact.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .dual_core import DualMatrix, KMatrix
from .errors import ParseError

_RATIONAL = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_rational(s: Any) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(f"rational entries must be strings, got {s!r}")
    if not _RATIONAL.fullmatch(s):
        raise ParseError(f"malformed rational {s!r}")
    x = Fraction(s)
    if str(x) != s:
        raise ParseError(f"rational {s!r} is not in canonical form (expected {x})")
    return x


def _parse_square(rows: Any, n: int, key: str) -> KMatrix:
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f"{key} must be a list of {n} rows")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != n:
            raise ParseError(f"every row of {key} must have {n} entries")
        out.append([parse_rational(x) for x in r])
    return KMatrix(out)


def _check_n(doc: Any) -> int:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    extra = set(doc) - {"n", "part0", "part1"}
    if extra:
        raise ParseError(f"unknown keys: {sorted(extra)}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'n' must be a positive integer")
    if "part0" not in doc:
        raise ParseError("missing 'part0'")
    return n


def dual_from_doc(doc: Any, require_part1: bool = True) -> DualMatrix:
    n = _check_n(doc)
    p0 = _parse_square(doc["part0"], n, "part0")
    if "part1" in doc:
        p1 = _parse_square(doc["part1"], n, "part1")
    elif require_part1:
        raise ParseError("missing 'part1'")
    else:
        p1 = KMatrix.zeros(n)
    return DualMatrix(p0, p1)


def kmatrix_from_doc(doc: Any) -> KMatrix:
    """Rational matrix from a document; a present part1 must be zero."""
    A = dual_from_doc(doc, require_part1=False)
    if not A.part1.is_zero():
        raise ParseError("expected a rational matrix but part1 is non-zero")
    return A.part0


def _rows(M: KMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in r] for r in M.rows]


def dual_to_doc(A: DualMatrix) -> dict:
    return {"n": A.n, "part0": _rows(A.part0), "part1": _rows(A.part1)}


def kmatrix_to_doc(M: KMatrix) -> dict:
    return {"n": M.nrows, "part0": _rows(M)}


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}") from e


def load_dual(path: str, require_part1: bool = True) -> DualMatrix:
    with open(path, encoding="utf-8") as fh:
        return dual_from_doc(loads(fh.read()), require_part1)


def load_kmatrix(path: str) -> KMatrix:
    with open(path, encoding="utf-8") as fh:
        return kmatrix_from_doc(loads(fh.read()))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2)
