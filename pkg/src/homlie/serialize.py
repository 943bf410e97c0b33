"""JSON documents for algebras, matrices and factor sets.

Basis indices in documents are 1-based (``b1 .. bn``); scalars are strings
``"p/q"`` or ``"p"``.  :func:`dumps` is canonical, so emit -> parse -> emit is
byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import HomLieAlgebra
from .factorset import FactorSet
from .linalg import Matrix, format_scalar, zero_vector


class ParseError(ValueError):
    pass


def parse_scalar(s) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(f"scalar must be a string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {s!r}") from exc


def matrix_to_doc(m: Matrix) -> list:
    return [[format_scalar(a) for a in row] for row in m.data]


def matrix_from_doc(doc, rows: int | None = None, cols: int | None = None) -> Matrix:
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise ParseError("matrix must be a list of rows")
    data = [[parse_scalar(a) for a in r] for r in doc]
    if rows is not None and len(data) != rows:
        raise ParseError(f"matrix has {len(data)} rows, expected {rows}")
    ncols = cols if cols is not None else (len(data[0]) if data else 0)
    if any(len(r) != ncols for r in data):
        raise ParseError("matrix rows have inconsistent lengths")
    return Matrix.from_rows(data, ncols)


def algebra_to_doc(a: HomLieAlgebra) -> dict:
    n = a.dim
    brackets = []
    for i in range(n):
        for j in range(i + 1, n):
            coeffs = {str(k + 1): format_scalar(x) for k, x in enumerate(a.c[i][j]) if x != 0}
            if coeffs:
                brackets.append({"i": i + 1, "j": j + 1, "coeffs": coeffs})
    return {"name": a.name, "dim": n, "brackets": brackets, "phi": matrix_to_doc(a.phi)}


def algebra_from_doc(doc) -> HomLieAlgebra:
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object")
    try:
        name, n = doc["name"], doc["dim"]
        raw_brackets, raw_phi = doc["brackets"], doc["phi"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from exc
    if not isinstance(n, int) or n < 0:
        raise ParseError("dim must be a non-negative integer")
    brackets = {}
    for entry in raw_brackets:
        i, j = entry.get("i"), entry.get("j")
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise ParseError(f"bracket indices must satisfy 1 <= i < j <= {n}: {entry}")
        if (i - 1, j - 1) in brackets:
            raise ParseError(f"duplicate bracket ({i},{j})")
        v = list(zero_vector(n))
        for k, x in entry.get("coeffs", {}).items():
            try:
                kk = int(k)
            except ValueError as exc:
                raise ParseError(f"bad basis index {k!r}") from exc
            if not 1 <= kk <= n:
                raise ParseError(f"basis index {kk} out of range")
            v[kk - 1] = parse_scalar(x)
        brackets[(i - 1, j - 1)] = v
    phi = matrix_from_doc(raw_phi, n, n)
    return HomLieAlgebra.from_brackets(n, brackets, phi, name)


def factor_set_to_doc(fs: FactorSet) -> dict:
    return {
        "base": fs.base.name,
        "z_dim": fs.z_dim,
        "q_dim": fs.q_dim,
        "r": [[[format_scalar(x) for x in v] for v in row] for row in fs.r],
    }


def factor_set_from_doc(doc, base: HomLieAlgebra) -> FactorSet:
    try:
        k, m, raw = doc["z_dim"], doc["q_dim"], doc["r"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad factor set document: {exc}") from exc
    if len(raw) != m or any(len(row) != m or any(len(v) != k for v in row) for row in raw):
        raise ParseError("factor set tensor must be q_dim x q_dim x z_dim")
    r = tuple(tuple(tuple(parse_scalar(x) for x in v) for v in row) for row in raw)
    return FactorSet(base, m, k, r)


def _is_leaf(x) -> bool:
    return not isinstance(x, (dict, list))


def _render(doc, indent: int) -> str:
    if _is_leaf(doc):
        return json.dumps(doc, ensure_ascii=False)
    items = doc.values() if isinstance(doc, dict) else doc
    if all(_is_leaf(x) for x in items):
        # rows of scalars and small maps stay on one line
        return json.dumps(doc, ensure_ascii=False, separators=(", ", ": "))
    pad = "  " * (indent + 1)
    if isinstance(doc, dict):
        body = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, indent + 1)}"
                for k, v in doc.items()]
        opening, closing = "{", "}"
    else:
        body = [pad + _render(x, indent + 1) for x in doc]
        opening, closing = "[", "]"
    return opening + "\n" + ",\n".join(body) + "\n" + "  " * indent + closing


def dumps(doc) -> str:
    """Canonical JSON text: two-space indent, innermost containers on one line."""
    return _render(doc, 0) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
