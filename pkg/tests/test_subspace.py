import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constrank.errors import BadParams, NotSymmetric
from constrank.formulas import a_rect, a_rect_alt, a_sig, a_sym, formula, hz_dim, hz_dim_long
from constrank.matrix import PMatrix, QMatrix, matrix_unit, signature
from constrank.poly import MPoly
from constrank.subspace import (AffineSubspace, construct_rect_witness, construct_signature_witness,
                                construct_sym_witness, pattern_space, to_parametric)

t1, t2, t3 = (MPoly.var(f"t{i}") for i in (1, 2, 3))


def test_sym_witness_3_2():
    S = construct_sym_witness(3, 2)
    assert S.base == QMatrix.diag([1, -1, 0])
    assert S.basis == (matrix_unit(3, 3, 2, 1, True), matrix_unit(3, 3, 3, 1, True), matrix_unit(3, 3, 3, 2, True))
    assert S.dim == 3


def test_sym_witness_2_2_is_the_one_parameter_family():
    assert to_parametric(construct_sym_witness(2, 2)).entries == PMatrix.from_rows([[1, t1], [t1, -1]]).entries


def test_sym_witness_odd_rank():
    S = construct_sym_witness(3, 3)
    assert S.base == QMatrix.diag([1, 1, -1])
    assert S.dim == 2


def test_sym_witness_bad_params():
    with pytest.raises(BadParams):
        construct_sym_witness(2, 3)
    with pytest.raises(BadParams):
        construct_sym_witness(2, 0)


def test_rect_witness_examples():
    P = construct_rect_witness(2, 3, 2).to_parametric()
    assert P.entries == PMatrix.from_rows([[1, t1, t2], [0, 1, t3]]).entries
    assert construct_rect_witness(4, 4, 4).dim == 6
    assert construct_rect_witness(1, 4, 1).dim == 3
    assert construct_rect_witness(2, 3, 0).dim == 0
    with pytest.raises(BadParams):
        construct_rect_witness(3, 2, 1)


def test_signature_witness_examples():
    assert construct_signature_witness(3, 1, 1).dim == 3
    S = construct_signature_witness(2, 2, 0)
    assert S.dim == 0 and S.base == QMatrix.identity(2)
    assert construct_signature_witness(4, 1, 2).dim == 5
    with pytest.raises(BadParams):
        construct_signature_witness(2, 2, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_witness_dimensions_match_formulas(n):
    for r in range(1, n + 1):
        S = construct_sym_witness(n, r)
        assert S.dim == a_sym(n, r)
        assert all(B.is_symmetric() for B in S.basis)
        assert signature(S.base).as_tuple() == ((r + 1) // 2, r // 2, n - r)
        for m in range(r, n + 1):
            assert construct_rect_witness(m, n, r).dim == a_rect(m, n, r) == a_rect_alt(m, n, r)
    for p in range(n + 1):
        for nu in range(n - p + 1):
            assert construct_signature_witness(n, p, nu).dim == a_sig(n, p, nu)


def test_formula_examples():
    assert formula("a-sym", n=4, r=3) == 5
    assert formula("a_rect", m=3, n=5, r=2) == 7
    assert formula("a-sym", n=5, r=0) == 0
    with pytest.raises(BadParams):
        formula("a-sym", n=2, r=3)
    with pytest.raises(BadParams):
        formula("a-rect", m=3, n=2, r=1)


@given(st.integers(0, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))).flatmap(
    lambda nm: st.tuples(st.just(nm[0]), st.just(nm[1]), st.integers(0, nm[1]))).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.just(t[1]), st.just(t[2]), st.integers(0, t[2]))))
def test_hz_forms(case):
    n, m, r, k = case
    assert hz_dim(m, n, r, k) == hz_dim_long(m, n, r, k)
    assert hz_dim(m, n, r, r) == a_rect(m, n, r)
    if n == m:
        assert hz_dim(m, n, r, k) == hz_dim(m, n, r, 0)


def test_pattern_space_examples():
    assert pattern_space("sym-W", 3, 3, r=2).positions == {(3, 3)}
    assert pattern_space("rect-Z", 2, 2, r=1).positions == {(1, 1), (2, 2)}
    assert pattern_space("sym-Z", 3, 3, p=0).dim == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_pattern_space_dimensions(n):
    for r in range(n + 1):
        for p in range(r + 1):
            z = pattern_space("sym-Z", n, n, p=p)
            u = pattern_space("sym-U", n, n, p=p, r=r)
            w = pattern_space("sym-W", n, n, r=r)
            assert (z.dim, u.dim, w.dim) == (p * (p + 1) // 2, (r - p) * (r - p + 1) // 2,
                                              (n - r) * (n - r + 1) // 2)
            # complement count p(r - p) + r(n - r)
            assert n * (n + 1) // 2 - z.dim - u.dim - w.dim == p * (r - p) + r * (n - r)


def test_rect_t_follows_the_paired_definition():
    # off-diagonal pairs inside the first m columns with not both indices > r
    T = pattern_space("rect-T", 3, 5, r=1)
    assert T.positions == {(1, 2), (1, 3)}
    assert T.basis()[0].to_lists()[:2] == [[0, 1, 0, 0, 0], [1, 0, 0, 0, 0]]
    Z = pattern_space("rect-Z", 3, 5, r=1)
    # Z + T fills the complement of the witness space
    assert 3 * 5 - Z.dim - T.dim == a_rect(3, 5, 1)


def test_subspace_validation():
    with pytest.raises(BadParams):
        AffineSubspace(2, 2, False, QMatrix.zeros(2, 2), (matrix_unit(2, 2, 1, 1), matrix_unit(2, 2, 1, 1)))
    with pytest.raises(NotSymmetric):
        AffineSubspace(2, 2, True, QMatrix.zeros(2, 2), (matrix_unit(2, 2, 1, 2),))


def test_parametric_roundtrip():
    S = construct_sym_witness(4, 3)
    assert AffineSubspace.from_parametric(S.to_parametric()) == S
    assert S.point([1, 2, 3, 4, 5]) == S.to_parametric().evaluate({f"t{i}": i for i in range(1, 6)})
