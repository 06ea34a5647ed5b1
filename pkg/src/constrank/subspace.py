"""Affine subspaces of matrices, the explicit witness families, and the
coordinate subspaces used in the upper-bound arguments.

Positions are 1-based ``(row, col)`` pairs throughout this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadParams, DimensionMismatch, NotSymmetric
from .formulas import a_rect, a_sig, a_sym
from .matrix import PMatrix, QMatrix, matrix_unit, rank_exact
from .poly import MPoly, Number


@dataclass(frozen=True)
class AffineSubspace:
    """``base + span(basis)`` inside the m x n (or symmetric n x n) matrices."""

    m: int
    n: int
    symmetric: bool
    base: QMatrix
    basis: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        for M in (self.base, *self.basis):
            if M.shape != (self.m, self.n):
                raise DimensionMismatch(f"matrix of shape {M.shape} in a {self.m}x{self.n} subspace")
        if self.symmetric:
            if self.m != self.n:
                raise DimensionMismatch("symmetric subspaces must be square")
            if not all(M.is_symmetric() for M in (self.base, *self.basis)):
                raise NotSymmetric("symmetric subspace with a non-symmetric matrix")
        if self.basis and rank_exact([B.vec() for B in self.basis]) != len(self.basis):
            raise BadParams("basis matrices are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    def param_names(self, prefix: str = "t") -> list[str]:
        return [f"{prefix}{i + 1}" for i in range(self.dim)]

    def to_parametric(self, prefix: str = "t") -> PMatrix:
        names = self.param_names(prefix)
        return to_parametric(self, names)

    def point(self, values: Sequence[Number]) -> QMatrix:
        if len(values) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates, got {len(values)}")
        M = self.base
        for c, B in zip(values, self.basis):
            if c:
                M = M + B * c
        return M

    def extend(self, direction: QMatrix) -> "AffineSubspace":
        return AffineSubspace(self.m, self.n, self.symmetric, self.base, self.basis + (direction,))

    def contains_direction(self, direction: QMatrix) -> bool:
        """Whether ``direction`` lies in the span of the basis."""
        vecs = [B.vec() for B in self.basis]
        return rank_exact(vecs + [direction.vec()]) == rank_exact(vecs) if vecs else direction.is_zero()

    @classmethod
    def from_parametric(cls, P: PMatrix, symmetric: bool | None = None) -> "AffineSubspace":
        """Subspace traced by an affine PMatrix; its parameters must act independently."""
        base, parts = P.affine_parts()
        basis = [parts[v] for v in P.params if not parts[v].is_zero()]
        if symmetric is None:
            symmetric = P.is_symmetric()
        return cls(P.rows, P.cols, symmetric, base, tuple(basis))


def to_parametric(S: AffineSubspace, names: Sequence[str] | None = None) -> PMatrix:
    """``base + sum t_i basis_i`` as a parametric matrix with fresh parameters."""
    names = list(names) if names is not None else S.param_names()
    rows = []
    for i in range(S.m):
        row = []
        for j in range(S.n):
            terms = {(): S.base[i, j]}
            for name, B in zip(names, S.basis):
                if B[i, j]:
                    terms[((name, 1),)] = B[i, j]
            row.append(MPoly(terms))
        rows.append(row)
    return PMatrix.from_rows(rows, names)


# --------------------------------------------------------------------------
# witness constructions


def _sym_block_witness(n: int, pos: int, neg: int) -> AffineSubspace:
    r = pos + neg
    base = QMatrix.diag([1] * pos + [-1] * neg + [0] * (n - r))
    basis = []
    # coupling block: rows pos+1..r against columns 1..pos, row-major
    for i in range(pos + 1, r + 1):
        for j in range(1, pos + 1):
            basis.append(matrix_unit(n, n, i, j, symmetric=True))
    # border block: rows r+1..n against columns 1..r, row-major
    for i in range(r + 1, n + 1):
        for j in range(1, r + 1):
            basis.append(matrix_unit(n, n, i, j, symmetric=True))
    return AffineSubspace(n, n, True, base, tuple(basis))


def construct_sym_witness(n: int, r: int) -> AffineSubspace:
    """Symmetric family with blocks I, -I, a free coupling block T and a free border A."""
    if not 1 <= r <= n:
        raise BadParams(f"need 1 <= r <= n, got r={r}, n={n}")
    S = _sym_block_witness(n, (r + 1) // 2, r // 2)
    assert S.dim == a_sym(n, r)
    return S


def construct_rect_witness(m: int, n: int, r: int) -> AffineSubspace:
    """J plus every strictly upper-triangular position in the first r rows."""
    if not 0 <= r <= m <= n:
        raise BadParams(f"need 0 <= r <= m <= n, got m={m}, n={n}, r={r}")
    base = QMatrix.from_rows([[1 if (i == j and i < r) else 0 for j in range(n)] for i in range(m)], n)
    basis = [matrix_unit(m, n, i, j) for i in range(1, r + 1) for j in range(i + 1, n + 1)]
    S = AffineSubspace(m, n, False, base, tuple(basis))
    assert S.dim == a_rect(m, n, r)
    return S


def construct_signature_witness(n: int, p: int, nu: int) -> AffineSubspace:
    """Same block shape as the symmetric witness with a full p x nu coupling block."""
    if p < 0 or nu < 0 or p + nu > n:
        raise BadParams(f"need p, nu >= 0 and p + nu <= n, got p={p}, nu={nu}, n={n}")
    S = _sym_block_witness(n, p, nu)
    assert S.dim == a_sig(n, p, nu)
    return S


# --------------------------------------------------------------------------
# coordinate subspaces


@dataclass(frozen=True)
class PatternSpace:
    """Span of the matrix units at ``positions``.

    With ``symmetric`` set, a position (i, j) with i <= j stands for
    E_ij + E_ji (just E_ii on the diagonal).
    """

    m: int
    n: int
    symmetric: bool
    positions: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "positions", frozenset(self.positions))
        for i, j in self.positions:
            if not (1 <= i <= self.m and 1 <= j <= self.n):
                raise BadParams(f"position ({i}, {j}) outside {self.m}x{self.n}")
            if self.symmetric and (i > j or j > self.m):
                raise BadParams(f"paired position ({i}, {j}) has no mirror image")

    @property
    def dim(self) -> int:
        return len(self.positions)

    def basis(self) -> list[QMatrix]:
        return [matrix_unit(self.m, self.n, i, j, self.symmetric) for i, j in sorted(self.positions)]


def _sym_range(lo: int, hi: int) -> set:
    return {(i, j) for i in range(lo, hi + 1) for j in range(i, hi + 1)}


def pattern_space(kind: str, m: int, n: int, p: int | None = None, r: int | None = None) -> PatternSpace:
    """The named proof subspace inside the m x n matrices.

    kinds: ``sym-Z`` (p), ``sym-U`` (p, r), ``sym-W`` (r), ``rect-Z`` (r), ``rect-T`` (r).
    """
    kind = kind.replace("_", "-")
    if kind.startswith("sym-"):
        if m != n:
            raise BadParams("symmetric pattern spaces need a square shape")
        if kind == "sym-Z":
            if p is None or not 0 <= p <= n:
                raise BadParams("sym-Z needs 0 <= p <= n")
            pos = _sym_range(1, p)
        elif kind == "sym-U":
            if p is None or r is None or not 0 <= p <= r <= n:
                raise BadParams("sym-U needs 0 <= p <= r <= n")
            pos = _sym_range(p + 1, r)
        elif kind == "sym-W":
            if r is None or not 0 <= r <= n:
                raise BadParams("sym-W needs 0 <= r <= n")
            pos = _sym_range(r + 1, n)
        else:
            raise BadParams(f"unknown pattern space {kind!r}")
        return PatternSpace(n, n, True, frozenset(pos))
    if r is None or not 0 <= r <= m <= n:
        raise BadParams(f"{kind} needs 0 <= r <= m <= n")
    if kind == "rect-Z":
        pos = {(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if i == j or (i > r and j > r)}
        return PatternSpace(m, n, False, frozenset(pos))
    if kind == "rect-T":
        # symmetric pairs inside the first m columns, off the diagonal, not both indices > r
        pos = {(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if i <= r}
        return PatternSpace(m, n, True, frozenset(pos))
    raise BadParams(f"unknown pattern space {kind!r}")


def unit_directions(S: AffineSubspace) -> list[tuple[tuple[int, int], QMatrix]]:
    """Matrix units of the ambient space (symmetric ones if S is symmetric) outside span(S)."""
    out = []
    for i in range(1, S.m + 1):
        for j in range(i if S.symmetric else 1, S.n + 1):
            E = matrix_unit(S.m, S.n, i, j, S.symmetric)
            if not S.contains_direction(E):
                out.append(((i, j), E))
    return out


def ambient_dim(m: int, n: int, symmetric: bool) -> int:
    return n * (n + 1) // 2 if symmetric else m * n

