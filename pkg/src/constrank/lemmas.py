"""Exact checks of the three auxiliary lemmas behind the dimension bounds.

* ``[[I, T], [T^t, -I]]`` squares to ``diag(I + T T^t, I + T^t T)`` and is
  invertible; invertibility is certified by the Cauchy-Binet expansion
  ``det(I + T^t T) = sum of squared minors of T`` (the empty minor gives 1).
* For a real symmetric A, ``det(I + sA)`` has a real root iff ``A != 0``,
  decided by a Sturm count.
* The bordered determinant ``det [[A, x], [x^t, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import IdentityFails, NotSymmetric, SingularA
from .matrix import PMatrix, PolyMinors, QMatrix, det_exact, poly_det, symbolic_matrix
from .poly import MPoly, Number, UPoly, isolate_root, rational_roots, sturm_real_root_count, to_rational


def _identity(n: int) -> PMatrix:
    return PMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def _blocks(A: PMatrix, B: PMatrix, C: PMatrix, D: PMatrix) -> PMatrix:
    rows = [ra + rb for ra, rb in zip(A.entries, B.entries)]
    rows += [rc + rd for rc, rd in zip(C.entries, D.entries)]
    return PMatrix.from_rows(rows)


def _zeros(m: int, n: int) -> PMatrix:
    return PMatrix.from_rows([[0] * n for _ in range(m)]) if m else PMatrix(0, n, ())


def sum_squared_minors(T: PMatrix) -> tuple[MPoly, int]:
    """Sum over k >= 0 of the squares of all k x k minors of T, and the term count."""
    pm = PolyMinors(T)
    total = MPoly.const(1)
    count = 1
    for k in range(1, min(T.rows, T.cols) + 1):
        for R in combinations(range(T.rows), k):
            for C in combinations(range(T.cols), k):
                d = pm.det(R, C)
                count += 1
                if d:
                    total = total + d * d
    return total, count


@dataclass(frozen=True)
class CauchyBinetReport:
    shape: tuple[int, int]
    lhs: MPoly  # det(I + T^t T)
    rhs: MPoly  # 1 + sum of squared minors
    minors: int
    holds: bool


def cauchy_binet_certificate(T: PMatrix) -> CauchyBinetReport:
    """Check det(I + T^t T) == 1 + sum of squared minors of T as polynomials."""
    lhs = poly_det(_identity(T.cols) + T.transpose() @ T)
    rhs, count = sum_squared_minors(T)
    if lhs != rhs:
        raise IdentityFails(f"det(I + T^t T) - sum of squared minors = {lhs - rhs}")
    return CauchyBinetReport(T.shape, lhs, rhs, count, True)


@dataclass(frozen=True)
class Lemma1Report:
    shape: tuple[int, int]
    block_square: bool
    cauchy_binet: CauchyBinetReport
    block_det: MPoly


def lemma1_block(T: PMatrix) -> PMatrix:
    return _blocks(_identity(T.rows), T, T.transpose(), _identity(T.cols).scale(-1))


def lemma1_check(T: PMatrix) -> Lemma1Report:
    """Square identity plus an everywhere-nonzero determinant for [[I, T], [T^t, -I]]."""
    m, n = T.shape
    M = lemma1_block(T)
    lhs = M @ M
    rhs = _blocks(_identity(m) + T @ T.transpose(), _zeros(m, n),
                  _zeros(n, m), _identity(n) + T.transpose() @ T)
    if lhs.entries != rhs.entries:
        raise IdentityFails("block square identity fails")
    cb = cauchy_binet_certificate(T)
    # det M = det(I) det(-I - T^t T) = (-1)^n det(I + T^t T)
    block_det = poly_det(M)
    if block_det != cb.rhs * (-1) ** n:
        raise IdentityFails(f"det of the block matrix is {block_det}")
    return Lemma1Report((m, n), True, cb, block_det)


def lemma1_symbolic(m: int, n: int) -> Lemma1Report:
    return lemma1_check(symbolic_matrix(m, n, "x"))


@dataclass(frozen=True)
class Lemma2Result:
    exists: bool
    polynomial: UPoly  # det(I + sA) in s
    root_count: int
    interval: tuple[Fraction, Fraction] | None = None
    exact_root: Fraction | None = None


def det_identity_plus(A: QMatrix) -> UPoly:
    """det(I + sA) as a polynomial in s."""
    s = MPoly.var("s")
    n = A.rows
    P = PMatrix.from_rows([[(1 if i == j else 0) + s * A[i, j] for j in range(n)] for i in range(n)])
    return poly_det(P).to_upoly("s")


def lemma2_root_exists(A: QMatrix) -> Lemma2Result:
    if not A.is_symmetric():
        raise NotSymmetric("det(I + sA) root check needs a symmetric matrix")
    p = det_identity_plus(A)
    count = sturm_real_root_count(p)
    if (count > 0) == A.is_zero():
        raise IdentityFails(f"det(I + sA) has {count} real roots but A is {'zero' if A.is_zero() else 'nonzero'}")
    if not count:
        return Lemma2Result(False, p, 0)
    interval = isolate_root(p)
    exact = next((x for x in (rational_roots(p) or []) if interval[0] <= x <= interval[1]), None)
    return Lemma2Result(True, p, count, interval, exact)


def bordered(A: QMatrix, x: Sequence[Number]) -> QMatrix:
    x = [to_rational(v) for v in x]
    rows = [list(A.entries[i]) + [x[i]] for i in range(A.rows)]
    rows.append(x + [Fraction(0)])
    return QMatrix.from_rows(rows)


def lemma3_bordered_det(A: QMatrix, x: Sequence[Number]) -> Fraction:
    """det [[A, x], [x^t, 0]] for symmetric invertible A.

    Equals -det(A) * x^t A^{-1} x, so it vanishes for x = 0 and for nonzero
    x with x^t A^{-1} x = 0, which requires A indefinite.
    """
    if not A.is_symmetric():
        raise NotSymmetric("bordered determinant needs a symmetric matrix")
    if len(x) != A.rows:
        raise ValueError(f"vector of length {len(x)} for a {A.rows}x{A.rows} matrix")
    if det_exact(A) == 0:
        raise SingularA("A is singular")
    return det_exact(bordered(A, x))
