"""Dense exact matrices over the rationals (QMatrix) and over MPoly (PMatrix).

Index conventions: ``M[i, j]`` and ``M.entries`` use Python's 0-based
indices.  Functions that follow the usual mathematical notation for submatrices
and matrix units (:func:`minor`, :func:`sym_minor_det`, :func:`matrix_unit`)
take 1-based row and column indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, NotSymmetric
from .poly import MPoly, Number, to_rational, var_key

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of Fraction

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Number]], cols: int | None = None) -> "QMatrix":
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence[Number]) -> "QMatrix":
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def vec(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.entries for x in row)

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, _transposed(self.entries, self.rows, self.cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def _check_same(self, other: "QMatrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._check_same(other)
        return QMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return self + other * -1

    def __neg__(self) -> "QMatrix":
        return self * -1

    def __mul__(self, c: Number) -> "QMatrix":
        c = to_rational(c)
        return QMatrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return QMatrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(row, col)), ZERO) for col in cols) for row in self.entries))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        """0-based selection."""
        return QMatrix(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def __str__(self) -> str:
        from .poly import format_rational

        cells = [[format_rational(x) for x in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _transposed(entries, rows, cols):
    return tuple(tuple(entries[i][j] for i in range(rows)) for j in range(cols))


# --------------------------------------------------------------------------
# Bareiss elimination


def _integer_rows(entries) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of scalings."""
    out = []
    scale = 1
    for row in entries:
        d = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                d = lcm(d, x.denominator)
        out.append([int(x * d) for x in row])
        scale *= d
    return out, scale


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """In-place fraction-free elimination with full pivoting.

    Returns ``(rank, signed_last_pivot)``; the second value is the determinant
    when ``a`` is square and of full rank, and 0 otherwise.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    sign = 1
    prev = 1
    k = 0
    while k < min(m, n):
        piv = None
        for i in range(k, m):
            row = a[i]
            for j in range(k, n):
                if row[j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        if i != k:
            a[i], a[k] = a[k], a[i]
            sign = -sign
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        pk = a[k]
        p = pk[k]
        for i in range(k + 1, m):
            ri = a[i]
            f = ri[k]
            if f:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * p - f * pk[j]) // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * p) // prev
            ri[k] = 0
        prev = p
        k += 1
    det = sign * prev if (m == n and k == n) else 0
    if m == n == 0:
        det = 1
    return k, det


def rank_int(rows: list[list[int]]) -> int:
    """Rank of an integer matrix given as lists (the lists are copied)."""
    if not rows or not rows[0]:
        return 0
    return _bareiss([list(r) for r in rows])[0]


def rank_exact(M: QMatrix | Sequence[Sequence[Number]]) -> int:
    entries = M.entries if isinstance(M, QMatrix) else M
    if not entries or not len(entries[0]):
        return 0
    a, _ = _integer_rows(entries)
    return _bareiss(a)[0]


def det_exact(M: QMatrix) -> Fraction:
    if not M.is_square():
        raise DimensionMismatch(f"determinant of a non-square {M.shape} matrix")
    if M.rows == 0:
        return ONE
    a, scale = _integer_rows(M.entries)
    return Fraction(_bareiss(a)[1], scale)


def _check_selection(shape, rows, cols):
    if len(rows) != len(cols):
        raise DimensionMismatch(f"{len(rows)} rows but {len(cols)} columns selected")
    for i in rows:
        if not 1 <= i <= shape[0]:
            raise DimensionMismatch(f"row index {i} out of range 1..{shape[0]}")
    for j in cols:
        if not 1 <= j <= shape[1]:
            raise DimensionMismatch(f"column index {j} out of range 1..{shape[1]}")


def minor(M: QMatrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on 1-based ``rows`` and ``cols``."""
    _check_selection(M.shape, rows, cols)
    return det_exact(M.submatrix([i - 1 for i in rows], [j - 1 for j in cols]))


def solve_linear(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """One solution of ``A x = b`` over the rationals (free variables set to 0), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [[to_rational(x) for x in A[i]] + [to_rational(b[i])] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if any(aug[i][n] for i in range(r, m)):
        return None
    x = [ZERO] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


# --------------------------------------------------------------------------
# signature


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def signature(M: QMatrix) -> Signature:
    """Inertia of a symmetric matrix by exact congruence diagonalization."""
    if not M.is_symmetric():
        raise NotSymmetric("signature needs a symmetric matrix")
    a = M.to_lists()
    n = M.rows
    pos = neg = 0
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence: row/col i += row/col j makes a[i][i] = 2 a[i][j]
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            piv = i
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            for row in a:
                row[piv], row[k] = row[k], row[piv]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f = f / d
                ri, rk = a[i], a[k]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
        for i in range(k + 1, n):
            a[i][k] = ZERO
            a[k][i] = ZERO
    return Signature(pos, neg, n - pos - neg)


def matrix_unit(rows: int, cols: int, i: int, j: int, symmetric: bool = False) -> QMatrix:
    """E_ij (1-based), or E_ij + E_ji when ``symmetric``; diagonal units stay E_ii."""
    if not (1 <= i <= rows and 1 <= j <= cols):
        raise IndexOutOfRange(f"({i}, {j}) outside a {rows}x{cols} matrix")
    if symmetric and not (j <= rows and i <= cols):
        raise IndexOutOfRange(f"mirror of ({i}, {j}) outside a {rows}x{cols} matrix")
    data = [[ZERO] * cols for _ in range(rows)]
    data[i - 1][j - 1] = ONE
    if symmetric:
        data[j - 1][i - 1] = ONE
    return QMatrix(rows, cols, tuple(tuple(r) for r in data))


# --------------------------------------------------------------------------
# parametric matrices


@dataclass(frozen=True)
class PMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples of MPoly
    params: tuple = ()

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        found = {v for row in self.entries for p in row for v in p.variables()}
        params = tuple(self.params)
        missing = found - set(params)
        if missing:
            params = params + tuple(sorted(missing, key=var_key))
        object.__setattr__(self, "params", params)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], params: Sequence[str] = ()) -> "PMatrix":
        data = tuple(tuple(x if isinstance(x, MPoly) else MPoly.const(to_rational(x)) for x in row)
                     for row in rows)
        cols = len(data[0]) if data else 0
        return cls(len(data), cols, data, tuple(params))

    @classmethod
    def lift(cls, M: QMatrix) -> "PMatrix":
        return cls.from_rows(M.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx) -> MPoly:
        i, j = idx
        return self.entries[i][j]

    @property
    def is_affine(self) -> bool:
        return all(p.degree() <= 1 for row in self.entries for p in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i))

    def transpose(self) -> "PMatrix":
        return PMatrix(self.cols, self.rows, _transposed(self.entries, self.rows, self.cols), self.params)

    def __add__(self, other: "PMatrix") -> "PMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        return PMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            _merge(self.params, other.params))

    def __sub__(self, other: "PMatrix") -> "PMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "PMatrix":
        return PMatrix(self.rows, self.cols, tuple(tuple(x * c for x in r) for r in self.entries), self.params)

    def __matmul__(self, other: "PMatrix") -> "PMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = MPoly()
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PMatrix(self.rows, other.cols, tuple(out), _merge(self.params, other.params))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PMatrix":
        """0-based selection."""
        return PMatrix(len(rows), len(cols),
                       tuple(tuple(self.entries[i][j] for j in cols) for i in rows), self.params)

    def evaluate(self, point: Mapping[str, Number]) -> QMatrix:
        return QMatrix(self.rows, self.cols, tuple(tuple(p.eval(point) for p in r) for r in self.entries))

    def subs(self, mapping) -> "PMatrix":
        return PMatrix.from_rows([[p.subs(mapping) for p in r] for r in self.entries])

    def affine_parts(self) -> tuple[QMatrix, dict[str, QMatrix]]:
        """Constant part and per-parameter coefficient matrices of an affine PMatrix."""
        if not self.is_affine:
            raise ValueError("matrix entries are not affine")
        base = QMatrix.from_rows([[p.constant_term() for p in r] for r in self.entries], self.cols)
        parts = {
            v: QMatrix.from_rows([[p.linear_coefficient(v) for p in r] for r in self.entries], self.cols)
            for v in self.params
        }
        return base, parts

    def __str__(self) -> str:
        cells = [[str(p) for p in r] for r in self.entries]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _merge(a: Sequence[str], b: Sequence[str]) -> tuple:
    seen = dict.fromkeys(a)
    seen.update(dict.fromkeys(b))
    return tuple(seen)


def symbolic_matrix(rows: int, cols: int, prefix: str = "x") -> PMatrix:
    """Matrix of independent parameters named ``{prefix}{i}_{j}`` (1-based)."""
    names = [[f"{prefix}{i + 1}_{j + 1}" for j in range(cols)] for i in range(rows)]
    return PMatrix.from_rows([[MPoly.var(v) for v in r] for r in names],
                             [v for r in names for v in r])


# --------------------------------------------------------------------------
# symbolic determinants

CofactorCutoff = 7


class PolyMinors:
    """Determinants of square submatrices of a PMatrix, memoized.

    Cofactor expansion along the first selected row reuses every smaller
    minor, so sweeping all k x k minors costs one cache entry per
    (row set, column set) pair.  Orders above ``CofactorCutoff`` go through
    fraction-free elimination over the polynomial ring.
    """

    def __init__(self, M: PMatrix):
        self.M = M
        self._cache: dict = {}
        self._zero_rows = [all(p.is_zero() for p in r) for r in M.entries]

    def det(self, rows: Sequence[int], cols: Sequence[int]) -> MPoly:
        """0-based selection."""
        rows = tuple(rows)
        cols = tuple(cols)
        if len(rows) != len(cols):
            raise DimensionMismatch("non-square selection")
        if len(rows) > CofactorCutoff:
            return _bareiss_poly([[self.M.entries[i][j] for j in cols] for i in rows])
        return self._cofactor(rows, cols)

    def _cofactor(self, rows: tuple, cols: tuple) -> MPoly:
        k = len(rows)
        if k == 0:
            return MPoly.const(1)
        key = (rows, cols)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        E = self.M.entries
        if k == 1:
            val = E[rows[0]][cols[0]]
        elif any(self._zero_rows[i] for i in rows):
            val = MPoly()
        elif k == 2:
            r0, r1 = E[rows[0]], E[rows[1]]
            c0, c1 = cols
            val = r0[c0] * r1[c1] - r0[c1] * r1[c0]
        else:
            val = MPoly()
            head = E[rows[0]]
            rest = rows[1:]
            for idx, c in enumerate(cols):
                a = head[c]
                if a.is_zero():
                    continue
                sub = self._cofactor(rest, cols[:idx] + cols[idx + 1:])
                if sub.is_zero():
                    continue
                term = a * sub
                val = val - term if idx % 2 else val + term
        self._cache[key] = val
        return val


def _bareiss_poly(a: list[list[MPoly]]) -> MPoly:
    n = len(a)
    a = [list(r) for r in a]
    sign = 1
    prev = MPoly.const(1)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return MPoly()
        if piv != k:
            a[piv], a[k] = a[k], a[piv]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * p - a[i][k] * a[k][j]).divide_exact(prev)
            a[i][k] = MPoly()
        prev = p
    return a[n - 1][n - 1] * sign


def sym_minor_det(M: PMatrix, rows: Sequence[int], cols: Sequence[int]) -> MPoly:
    """Determinant polynomial of the submatrix on 1-based ``rows`` and ``cols``."""
    _check_selection(M.shape, rows, cols)
    return PolyMinors(M).det([i - 1 for i in rows], [j - 1 for j in cols])


def poly_det(M: PMatrix) -> MPoly:
    if M.rows != M.cols:
        raise DimensionMismatch(f"determinant of a non-square {M.shape} matrix")
    return PolyMinors(M).det(range(M.rows), range(M.cols))
