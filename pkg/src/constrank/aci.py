"""Affine column independent (ACI) matrices.

An ACI-matrix has entries of degree at most one and no parameter shared by
two columns.  :func:`acify` splits every shared parameter into one fresh
copy per column, named ``"<name>#<column>"`` (1-based column).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DegreeTooHigh, IdentityFails
from .formulas import hz_dim, hz_dim_long
from .matrix import PMatrix
from .poly import MPoly, Number


@dataclass(frozen=True)
class AciReport:
    is_aci: bool
    parameter: str | None = None
    columns: tuple[int, int] | None = None  # first two 1-based columns sharing the parameter
    entry: tuple[int, int] | None = None  # 1-based entry with degree > 1

    def to_json(self) -> dict:
        out: dict = {"is_aci": self.is_aci}
        if self.parameter is not None:
            out["parameter"] = self.parameter
        if self.columns is not None:
            out["columns"] = list(self.columns)
        if self.entry is not None:
            out["entry"] = list(self.entry)
        return out


def _columns_of(M: PMatrix) -> dict[str, list[int]]:
    cols: dict[str, list[int]] = {}
    for j in range(M.cols):
        for i in range(M.rows):
            for v in M[i, j].variables():
                seen = cols.setdefault(v, [])
                if j + 1 not in seen:
                    seen.append(j + 1)
    return cols


def is_aci(M: PMatrix) -> AciReport:
    for i in range(M.rows):
        for j in range(M.cols):
            p = M[i, j]
            if p.degree() > 1:
                bad = next(v for v in p.variables() if any(
                    dict(mono).get(v, 0) and sum(e for _, e in mono) > 1 for mono, _ in p.items()))
                return AciReport(False, parameter=bad, entry=(i + 1, j + 1))
    cols = _columns_of(M)
    for v in M.params:
        where = cols.get(v, [])
        if len(where) > 1:
            return AciReport(False, parameter=v, columns=(where[0], where[1]))
    return AciReport(True)


def split_name(name: str, column: int) -> str:
    return f"{name}#{column}"


def acify(M: PMatrix) -> PMatrix:
    """Give every column its own copy of each parameter that appears in several columns."""
    for row in M.entries:
        for p in row:
            if p.degree() > 1:
                raise DegreeTooHigh(f"entry {p} has degree {p.degree()}")
    cols = _columns_of(M)
    shared = {v for v, where in cols.items() if len(where) > 1}
    if not shared:
        return M
    rows = []
    for i in range(M.rows):
        row = []
        for j in range(M.cols):
            p = M[i, j]
            row.append(p.rename({v: split_name(v, j + 1) for v in shared if v in p.variables()}))
        rows.append(row)
    params = []
    for v in M.params:
        if v in shared:
            params.extend(split_name(v, c) for c in sorted(cols[v]))
        else:
            params.append(v)
    out = PMatrix.from_rows(rows, params)
    assert is_aci(out).is_aci
    return out


def duplicate_assignment(M: PMatrix, values: Mapping[str, Number]) -> dict:
    """Values for acify(M) that give every copy of a split parameter the original value."""
    cols = _columns_of(M)
    out = {}
    for v, x in values.items():
        where = cols.get(v, [])
        if len(where) > 1:
            out.update({split_name(v, c): x for c in where})
        else:
            out[v] = x
    return out


def hz_family_dim(m: int, n: int, r: int, k: int) -> int:
    """Dimension of the block family with triangular diagonal blocks of orders k and r - k."""
    long_form = hz_dim_long(m, n, r, k)
    short_form = hz_dim(m, n, r, k)
    if long_form != short_form:
        raise IdentityFails(f"hz forms disagree: {long_form} != {short_form}")
    return short_form


def remark_matrix() -> PMatrix:
    """The one-parameter family [[1, t], [t, -1]]."""
    t = MPoly.var("t")
    return PMatrix.from_rows([[1, t], [t, -1]], ["t"])
