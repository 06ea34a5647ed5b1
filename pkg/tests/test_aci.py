import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from constrank.aci import acify, duplicate_assignment, hz_family_dim, is_aci, remark_matrix
from constrank.certifier import certify_constant_rank
from constrank.errors import DegreeTooHigh
from constrank.formulas import a_rect
from constrank.matrix import PMatrix
from constrank.poly import MPoly
from constrank.search import random_rational
from constrank.subspace import construct_rect_witness, construct_sym_witness

s, t = MPoly.var("s"), MPoly.var("t")


def test_is_aci_examples():
    rep = is_aci(PMatrix.from_rows([[1, s], [s, -1]]))
    assert not rep.is_aci and rep.parameter == "s" and rep.columns == (1, 2)
    assert is_aci(PMatrix.from_rows([[1, s], [t, -1]])) .is_aci
    rep = is_aci(PMatrix.from_rows([[s * s, 0], [0, 1]]))
    assert not rep.is_aci and rep.entry == (1, 1)


def test_report_fields_present_iff_false():
    assert is_aci(PMatrix.from_rows([[1, s], [t, -1]])).to_json() == {"is_aci": True}
    assert set(is_aci(remark_matrix()).to_json()) == {"is_aci", "parameter", "columns"}


def test_acify_examples():
    A = acify(PMatrix.from_rows([[1, s], [s, -1]]))
    assert [[str(p) for p in row] for row in A.entries] == [["1", "s#2"], ["s#1", "-1"]]
    M = PMatrix.from_rows([[1, s], [t, -1]])
    assert acify(M) is M
    B = acify(PMatrix.from_rows([[s, s + t], [0, t]]))
    assert set(B.params) == {"s#1", "s#2", "t"}
    assert str(B[0, 1]) == "s#2 + t"


def test_acify_rejects_degree_two():
    with pytest.raises(DegreeTooHigh):
        acify(PMatrix.from_rows([[s * t, 0], [0, 1]]))


def _random_affine(rng, m, n, names):
    rows = []
    for _ in range(m):
        row = []
        for _ in range(n):
            p = MPoly.const(rng.randint(-3, 3))
            for v in names:
                if rng.random() < 0.4:
                    p = p + MPoly.var(v) * rng.randint(-3, 3)
            row.append(p)
        rows.append(row)
    return PMatrix.from_rows(rows, names)


@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_acify_properties(seed, m, n):
    rng = random.Random(seed)
    M = _random_affine(rng, m, n, ["a", "b", "c"])
    A = acify(M)
    assert is_aci(A).is_aci
    assert acify(A).entries == A.entries
    values = {v: random_rational(rng) for v in M.params}
    assert M.evaluate(values) == A.evaluate(duplicate_assignment(M, values))


def test_remark_counterexample_end_to_end():
    S = construct_sym_witness(2, 2)
    assert certify_constant_rank(S, 2).certified
    cert = certify_constant_rank(acify(S.to_parametric()), 2)
    assert cert.verdict == "refuted"
    point = {k: Fraction(v) for k, v in cert.counterexample["point"].items()}
    assert point["t1#1"] * point["t1#2"] == -1


def test_hz_examples():
    assert hz_family_dim(3, 5, 2, 2) == 7
    assert len({hz_family_dim(4, 4, 3, k) for k in range(4)}) == 1
    for m, n, r in [(2, 5, 2), (3, 6, 3), (1, 4, 1)]:
        values = [hz_family_dim(m, n, r, k) for k in range(r + 1)]
        assert max(values) == values[r] == a_rect(m, n, r)


def test_rect_witness_is_aci():
    assert is_aci(construct_rect_witness(3, 4, 2).to_parametric()).is_aci
