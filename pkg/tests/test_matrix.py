import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from constrank.errors import DimensionMismatch, IndexOutOfRange, NotSymmetric
from constrank.matrix import (PMatrix, QMatrix, det_exact, matrix_unit, minor, poly_det, rank_exact,
                              signature, sym_minor_det, symbolic_matrix)
from constrank.poly import MPoly

from conftest import qmatrices, square_qmatrices, symmetric_qmatrices

t, u = MPoly.var("t"), MPoly.var("u")


def sympy_rank(M: QMatrix) -> int:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M.entries]).rank()


def echelon_rank(M: QMatrix) -> int:
    """Plain Gaussian elimination over Fraction, the independent oracle for Bareiss."""
    a = [list(r) for r in M.entries]
    rank = 0
    for c in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(M.rows):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def test_rank_examples():
    assert rank_exact(QMatrix.identity(3)) == 3
    assert rank_exact(QMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_planted_rank():
    rng = random.Random(5)
    for _ in range(20):
        A = QMatrix.from_rows([[rng.randint(-9, 9) for _ in range(3)] for _ in range(5)])
        B = QMatrix.from_rows([[rng.randint(-9, 9) for _ in range(5)] for _ in range(3)])
        assert rank_exact(A @ B) == min(3, rank_exact(A), rank_exact(B))


@given(qmatrices(max_rows=6, max_cols=6, entries=st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))))
@settings(max_examples=150, deadline=None)
def test_rank_matches_echelon_oracle(M):
    assert rank_exact(M) == echelon_rank(M) == sympy_rank(M)


def test_det_examples():
    for n in range(1, 5):
        assert det_exact(QMatrix.identity(n)) == 1
    remark = PMatrix.from_rows([[1, t], [t, -1]])
    assert det_exact(remark.evaluate({"t": 2})) == -5


def test_minor_notation():
    M = QMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert minor(M, (1, 2), (1, 2)) == 1 * 5 - 2 * 4
    assert minor(M, (2,), (3,)) == 6
    with pytest.raises(DimensionMismatch):
        minor(M, (1, 2), (1,))
    with pytest.raises(DimensionMismatch):
        minor(M, (1, 4), (1, 2))


@given(qmatrices(max_rows=4, max_cols=4))
@settings(max_examples=60, deadline=None)
def test_single_entry_minor_is_entry(M):
    for i in range(M.rows):
        for j in range(M.cols):
            assert minor(M, (i + 1,), (j + 1,)) == M[i, j]


@given(square_qmatrices())
@settings(max_examples=60, deadline=None)
def test_det_lift_agrees(M):
    assert poly_det(PMatrix.lift(M)) == det_exact(M)
    assert det_exact(M) == sympy.Matrix([[int(x) for x in r] for r in M.entries]).det()


def test_poly_minor_examples():
    assert str(sym_minor_det(PMatrix.from_rows([[1, t], [t, -1]]), (1, 2), (1, 2))) == "-1 - t^2"
    assert sym_minor_det(PMatrix.from_rows([[t]]), (1,), (1,)) == t
    assert sym_minor_det(PMatrix.from_rows([[1, t], [u, -1]]), (1, 2), (1, 2)) == -1 - t * u


def test_polynomial_bareiss_agrees_with_cofactors():
    # order 8 goes through fraction-free elimination over the polynomial ring
    rng = random.Random(2)
    rows = [[MPoly.const(rng.randint(-2, 2)) + (t if rng.random() < 0.2 else 0) for _ in range(8)] for _ in range(8)]
    P = PMatrix.from_rows(rows)
    for val in (0, 1, -3, Fraction(2, 7)):
        assert poly_det(P).eval({"t": val}) == det_exact(P.evaluate({"t": val}))


def test_symbolic_3x3_det_matches_sympy():
    X = symbolic_matrix(3, 3, "x")
    syms = sympy.Matrix(3, 3, lambda i, j: sympy.Symbol(f"x{i + 1}_{j + 1}"))
    assert len(poly_det(X).terms) == len(sympy.Poly(syms.det()).terms()) == 6


def test_signature_examples():
    assert signature(QMatrix.diag([1, -1, 0])).as_tuple() == (1, 1, 1)
    assert signature(PMatrix.from_rows([[1, t], [t, -1]]).evaluate({"t": 5})).as_tuple() == (1, 1, 0)
    assert signature(QMatrix.from_rows([[0, 1], [1, 0]])).as_tuple() == (1, 1, 0)
    with pytest.raises(NotSymmetric):
        signature(QMatrix.from_rows([[0, 1], [2, 0]]))


def _random_invertible(rng, n):
    while True:
        P = QMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if det_exact(P):
            return P


@given(symmetric_qmatrices(), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_signature_congruence_invariant(M, seed):
    P = _random_invertible(random.Random(seed), M.rows)
    assert signature(P.transpose() @ M @ P) == signature(M)


@given(symmetric_qmatrices(max_n=6))
@settings(max_examples=100, deadline=None)
def test_signature_sums_to_rank(M):
    sig = signature(M)
    assert sig.positive + sig.negative == rank_exact(M)
    assert sig.positive + sig.negative + sig.zero == M.rows


@given(symmetric_qmatrices(max_n=4))
@settings(max_examples=40, deadline=None)
def test_signature_matches_eigenvalue_signs(M):
    eig = sympy.Matrix([[int(x) for x in r] for r in M.entries]).eigenvals()
    pos = sum(k for v, k in eig.items() if sympy.re(sympy.N(v, 50)) > 1e-30)
    neg = sum(k for v, k in eig.items() if sympy.re(sympy.N(v, 50)) < -1e-30)
    sig = signature(M)
    assert (sig.positive, sig.negative) == (pos, neg)


def test_matrix_unit_examples():
    assert matrix_unit(2, 2, 1, 2, symmetric=True).to_lists() == [[0, 1], [1, 0]]
    assert matrix_unit(2, 2, 1, 1, symmetric=True).to_lists() == [[1, 0], [0, 0]]
    assert matrix_unit(2, 3, 1, 3).to_lists() == [[0, 0, 1], [0, 0, 0]]
    with pytest.raises(IndexOutOfRange):
        matrix_unit(2, 2, 3, 1)


def test_pmatrix_affine_parts():
    P = PMatrix.from_rows([[1, t], [u, 2 * t - 1]])
    base, parts = P.affine_parts()
    assert base.to_lists() == [[1, 0], [0, -1]]
    assert parts["t"].to_lists() == [[0, 1], [0, 2]]
    assert parts["u"].to_lists() == [[0, 0], [1, 0]]
