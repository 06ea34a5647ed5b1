"""JSON readers and writers for the library's value types.

Rationals are strings ``"p/q"`` (``q`` dropped when 1).  Polynomials are
lists of ``{"coeff", "exponents"}`` records in ascending graded-lex order.
"""

from __future__ import annotations

import json
from typing import Any

from .certifier import RankCertificate
from .errors import ConstRankError
from .matrix import PMatrix, QMatrix
from .poly import MPoly, format_rational, parse_rational
from .subspace import AffineSubspace


class FormatError(ConstRankError, ValueError):
    pass


def poly_to_json(p: MPoly) -> list[dict]:
    return [{"coeff": format_rational(c), "exponents": dict(mono)} for mono, c in p.sorted_terms()]


def poly_from_json(records) -> MPoly:
    if isinstance(records, (int, str)):
        return MPoly.const(parse_rational(str(records)))
    return MPoly.from_records((parse_rational(str(r["coeff"])), r.get("exponents", {})) for r in records)


def qmatrix_to_json(M: QMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols,
            "entries": [[format_rational(x) for x in row] for row in M.entries]}


def qmatrix_from_json(d: dict) -> QMatrix:
    entries = [[parse_rational(str(x)) for x in row] for row in d["entries"]]
    if len(entries) != d["rows"] or any(len(row) != d["cols"] for row in entries):
        raise FormatError("entries do not match the declared shape")
    return QMatrix.from_rows(entries, d["cols"])


def pmatrix_to_json(M: PMatrix) -> dict:
    return {"rows": M.rows, "cols": M.cols, "params": list(M.params),
            "entries": [[poly_to_json(p) for p in row] for row in M.entries]}


def pmatrix_from_json(d: dict) -> PMatrix:
    entries = [[poly_from_json(x) for x in row] for row in d["entries"]]
    if len(entries) != d["rows"] or any(len(row) != d["cols"] for row in entries):
        raise FormatError("entries do not match the declared shape")
    if not entries:
        return PMatrix(0, d["cols"], (), tuple(d.get("params", ())))
    return PMatrix.from_rows(entries, d.get("params", ()))


def subspace_to_json(S: AffineSubspace) -> dict:
    return {"m": S.m, "n": S.n, "symmetric": S.symmetric,
            "base": qmatrix_to_json(S.base), "basis": [qmatrix_to_json(B) for B in S.basis]}


def subspace_from_json(d: dict) -> AffineSubspace:
    return AffineSubspace(d["m"], d["n"], bool(d["symmetric"]), qmatrix_from_json(d["base"]),
                          tuple(qmatrix_from_json(B) for B in d["basis"]))


def certificate_to_json(c: RankCertificate) -> dict:
    return c.to_json()


def certificate_from_json(d: dict) -> RankCertificate:
    return RankCertificate(d["claimed_rank"], d["mode"], tuple(d["shape"]), list(d["params"]),
                           d["verdict"], d.get("upper"), d.get("lower"), d.get("counterexample"),
                           d.get("seed"))


def detect(d: Any) -> str:
    """Which document type a parsed JSON value holds."""
    if isinstance(d, dict):
        if "base" in d and "basis" in d:
            return "subspace"
        if "verdict" in d:
            return "certificate"
        if "entries" in d:
            return "pmatrix" if "params" in d else "qmatrix"
    raise FormatError("unrecognized JSON document")


def load_family(d: dict) -> AffineSubspace | PMatrix:
    kind = detect(d)
    if kind == "subspace":
        return subspace_from_json(d)
    if kind == "pmatrix":
        return pmatrix_from_json(d)
    if kind == "qmatrix":
        return PMatrix.lift(qmatrix_from_json(d))
    raise FormatError(f"expected a matrix family, got a {kind}")


def dumps(doc: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
