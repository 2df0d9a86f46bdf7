"""Point-set files: a JSON object ``{"p": <real>, "points": [[...], ...]}``.

Canonical output has sorted keys and 17-significant-digit floats so that
parse -> dump is byte-stable.
"""
from __future__ import annotations

import hashlib
import json
import math

import numpy as np

from .lp_core import LpSpace, PointSet


class ParseError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _reject_constant(name):
    raise ParseError("document", f"non-finite literal {name} is not allowed")


def _number(x, field: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(field, f"expected a number, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x):
        raise ParseError(field, "must be finite")
    return x


def loads(text: str, p_override: float | None = None) -> PointSet:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise ParseError("document", f"invalid JSON ({e})") from None
    if not isinstance(doc, dict):
        raise ParseError("document", "expected an object with keys 'p' and 'points'")
    if p_override is not None:
        p = float(p_override)
    elif "p" not in doc:
        raise ParseError("p", "missing")
    else:
        p = _number(doc["p"], "p")
    if not math.isfinite(p) or p <= 1.0:
        raise ParseError("p", f"must satisfy 1 < p < inf, got {p!r}")
    rows = doc.get("points")
    if not isinstance(rows, list) or not rows:
        raise ParseError("points", "expected a nonempty list of coordinate lists")
    dim = None
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not row:
            raise ParseError(f"points[{i}]", "expected a nonempty list of numbers")
        if dim is None:
            dim = len(row)
        elif len(row) != dim:
            raise ParseError(f"points[{i}]", f"has {len(row)} coordinates, expected {dim}")
        out.append([_number(x, f"points[{i}][{k}]") for k, x in enumerate(row)])
    return PointSet(LpSpace(p), np.array(out))


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps(A: PointSet) -> str:
    rows = ", ".join("[" + ", ".join(_fmt(x) for x in row) + "]" for row in A.points)
    return '{"p": ' + _fmt(A.p) + ', "points": [' + rows + "]}\n"


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()
