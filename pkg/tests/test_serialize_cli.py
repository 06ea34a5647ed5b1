import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from constrank import serialize as ser
from constrank.certifier import certify_constant_rank
from constrank.cli import run
from constrank.matrix import PMatrix
from constrank.poly import MPoly
from constrank.subspace import construct_rect_witness, construct_signature_witness, construct_sym_witness

from conftest import mpolys, qmatrices


def invoke(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@given(mpolys())
@settings(max_examples=60, deadline=None)
def test_poly_roundtrip(p):
    doc = ser.poly_to_json(p)
    assert ser.poly_from_json(json.loads(json.dumps(doc))) == p


@given(qmatrices())
@settings(max_examples=60, deadline=None)
def test_qmatrix_roundtrip(M):
    assert ser.qmatrix_from_json(json.loads(ser.dumps(ser.qmatrix_to_json(M)))) == M


def test_poly_records_are_graded_lex():
    P = construct_sym_witness(2, 2).to_parametric()
    doc = ser.pmatrix_to_json(P)
    assert doc["entries"][0][0] == [{"coeff": "1", "exponents": {}}]
    assert doc["entries"][0][1] == [{"coeff": "1", "exponents": {"t1": 1}}]
    assert ser.pmatrix_from_json(doc).entries == P.entries


@pytest.mark.parametrize("S", [construct_sym_witness(4, 3), construct_rect_witness(2, 4, 2),
                               construct_signature_witness(3, 1, 1)])
def test_subspace_and_certificate_roundtrip(S):
    doc = json.loads(ser.dumps(ser.subspace_to_json(S)))
    assert ser.subspace_from_json(doc) == S
    cert = certify_constant_rank(S, 2, seed=3)
    back = ser.certificate_from_json(json.loads(ser.dumps(cert.to_json())))
    assert back.to_json() == cert.to_json()


def test_formula_prints_value(monkeypatch, capsys):
    code, out, _ = invoke(["formula", "a-sym", "--n", "4", "--r", "3"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0 and out == "5\n"


def test_construct_certify_pipeline(monkeypatch, capsys):
    code, doc, _ = invoke(["construct", "rect", "--m", "2", "--n", "3", "--r", "2"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0
    code, out, _ = invoke(["certify", "--r", "2", "--mode", "symbolic"], doc, monkeypatch, capsys)
    assert code == 0 and json.loads(out)["verdict"] == "certified"


def test_sym_3_2_pipeline_is_refuted(monkeypatch, capsys):
    code, doc, _ = invoke(["construct", "sym", "--n", "3", "--r", "2"], monkeypatch=monkeypatch, capsys=capsys)
    code, out, _ = invoke(["certify", "--r", "2", "--mode", "symbolic"], doc, monkeypatch, capsys)
    assert code == 2 and json.loads(out)["verdict"] == "refuted"


def test_acify_pipeline_refuted(monkeypatch, capsys):
    _, doc, _ = invoke(["construct", "sym", "--n", "2", "--r", "2"], monkeypatch=monkeypatch, capsys=capsys)
    code, acified, _ = invoke(["aci", "acify"], doc, monkeypatch, capsys)
    assert code == 0
    assert ser.pmatrix_from_json(json.loads(acified)).params == ("t1#1", "t1#2")
    code, out, _ = invoke(["certify", "--r", "2"], acified, monkeypatch, capsys)
    assert code == 2
    pt = json.loads(out)["counterexample"]["point"]
    assert int(pt["t1#1"]) * int(pt["t1#2"]) == -1


def test_remark_family_certified(monkeypatch, capsys):
    code, out, _ = invoke(["certify", "sym", "--n", "2", "--r", "2"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0


def test_usage_errors(monkeypatch, capsys):
    assert invoke(["certify", "sym", "--n", "2", "--r", "2", "--mode", "randomized"],
                  monkeypatch=monkeypatch, capsys=capsys)[0] == 1
    assert invoke(["formula", "a-sym", "--n", "2", "--r", "3"], monkeypatch=monkeypatch, capsys=capsys)[0] == 1
    assert invoke(["bogus"], monkeypatch=monkeypatch, capsys=capsys)[0] == 1
    assert invoke(["certify", "--r", "1"], "not json", monkeypatch, capsys)[0] == 1


def test_inconclusive_exit(monkeypatch, capsys):
    P = PMatrix.from_rows([[1, 0], [0, 0]])
    doc = ser.dumps(ser.pmatrix_to_json(P))
    code, _, _ = invoke(["certify", "--r", "1", "--mode", "structural"], doc, monkeypatch, capsys)
    assert code == 0
    t = MPoly.var("t")
    doc = ser.dumps(ser.pmatrix_to_json(PMatrix.from_rows([[1 + t * t, 0], [0, 0]])))
    code, _, _ = invoke(["certify", "--r", "1", "--mode", "structural"], doc, monkeypatch, capsys)
    assert code == 3


def test_byte_identical_output(monkeypatch, capsys):
    argv = ["probe", "random", "--n", "2", "--r", "1", "--symmetric", "--seed", "5", "--trials", "5"]
    first = invoke(argv, monkeypatch=monkeypatch, capsys=capsys)
    second = invoke(argv, monkeypatch=monkeypatch, capsys=capsys)
    assert first == second
    argv = ["certify", "sym", "--n", "3", "--r", "3", "--mode", "randomized", "--seed", "2"]
    assert invoke(argv, monkeypatch=monkeypatch, capsys=capsys) == invoke(argv, monkeypatch=monkeypatch, capsys=capsys)


def test_lemma_and_aci_commands(monkeypatch, capsys):
    code, out, _ = invoke(["lemma", "lemma1", "--m", "1", "--n", "2"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0 and json.loads(out)["cauchy_binet"]
    code, out, _ = invoke(["lemma", "lemma2", "--seed", "1", "--trials", "3"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 0 and all(r["exists"] for r in json.loads(out)["results"])
    doc = json.dumps({"A": {"rows": 2, "cols": 2, "entries": [["1", "0"], ["0", "1"]]}, "x": ["1", "0"]})
    code, out, _ = invoke(["lemma", "lemma3", "--in", "-"], doc, monkeypatch, capsys)
    assert json.loads(out)["results"][0]["determinant"] == "-1"
    code, out, _ = invoke(["aci", "dim", "--m", "3", "--n", "5", "--r", "2", "--k", "2"], monkeypatch=monkeypatch, capsys=capsys)
    assert out == "7\n"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "constrank", "formula", "a-rect", "--m", "3", "--n", "5", "--r", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "7\n"
