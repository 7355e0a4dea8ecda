from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given

from dualcanon import cli, serialization
from dualcanon.dual_core import DualMatrix, KMatrix
from dualcanon.errors import ParseError
from dualcanon.nu_structure import jordan_matrix
from dualcanon.pipeline import fuzz_conjugate

from .conftest import dual_matrices, rationals

F = Fraction


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


MIXED = {"n": 3, "part0": [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]], "part1": [["1", "0", "0"], ["0", "2", "0"], ["0", "0", "3"]]}


class TestSerialization:
    @given(rationals)
    def test_rational_round_trip(self, x):
        assert serialization.parse_rational(serialization.format_rational(x)) == x

    @pytest.mark.parametrize("bad", ["1/1", "2/4", "+3", "-0", "01", "1.5", "1/0", "1/-2", " 1", "", 3, None, "0/5"])
    def test_strict_rationals(self, bad):
        with pytest.raises(ParseError):
            serialization.parse_rational(bad)

    @pytest.mark.parametrize("good,value", [("0", 0), ("-7", -7), ("3/4", F(3, 4)), ("-10/3", F(-10, 3))])
    def test_accepted(self, good, value):
        assert serialization.parse_rational(good) == value

    @given(dual_matrices())
    def test_document_round_trip(self, A):
        text = serialization.dumps(serialization.dual_to_doc(A))
        B = serialization.dual_from_doc(serialization.loads(text))
        assert B == A
        assert serialization.dumps(serialization.dual_to_doc(B)) == text

    @pytest.mark.parametrize(
        "doc",
        [
            [],
            {"n": 2, "part0": [["1"]], "part1": [["0"]]},
            {"n": 0, "part0": [], "part1": []},
            {"n": True, "part0": [["1"]], "part1": [["1"]]},
            {"n": 1, "part0": [["1"]]},
            {"n": 1, "part0": [["1"]], "part1": [["1"]], "extra": 1},
            {"n": 1, "part0": [[1]], "part1": [["1"]]},
        ],
    )
    def test_bad_documents(self, doc):
        with pytest.raises(ParseError):
            serialization.dual_from_doc(doc)

    def test_kmatrix_doc(self):
        assert serialization.kmatrix_from_doc({"n": 1, "part0": [["2"]]}) == KMatrix([[2]])
        with pytest.raises(ParseError):
            serialization.kmatrix_from_doc({"n": 1, "part0": [["2"]], "part1": [["1"]]})

    def test_invalid_json(self):
        with pytest.raises(ParseError):
            serialization.loads("{not json")


class TestCommands:
    def test_canon(self, tmp_path, capsys):
        code, out, _ = run(["canon", write(tmp_path, "a.json", MIXED)], capsys)
        assert code == 0
        doc = json.loads(out)
        assert doc["family"] == "N3_MIXED_21"
        assert doc["matrix"]["part1"] == [["3", "0", "0"], ["0", "0", "0"], ["0", "0", "3"]]
        A = serialization.dual_from_doc(MIXED)
        D = serialization.dual_from_doc(doc["witness"])
        assert D @ A == serialization.dual_from_doc(doc["matrix"]) @ D

    def test_similar_and_check(self, tmp_path, capsys):
        A = serialization.dual_from_doc(MIXED)
        fa = write(tmp_path, "a.json", MIXED)
        fb = write(tmp_path, "b.json", serialization.dual_to_doc(fuzz_conjugate(A, 3)))
        code, out, _ = run(["similar", fa, fb, "--check"], capsys)
        assert code == 0 and json.loads(out)["verdict"] == "SIMILAR"
        other = serialization.dual_to_doc(DualMatrix(jordan_matrix((2, 1)), KMatrix.diag([1, 2, 4])))
        fc = write(tmp_path, "c.json", other)
        code, out, _ = run(["similar", fa, fc], capsys)
        assert code == 0 and json.loads(out)["verdict"] == "NOT_SIMILAR"
        code, _, _ = run(["similar", fa, fc, "--check"], capsys)
        assert code == 4

    def test_similar_linear_seed(self, tmp_path, capsys):
        fa = write(tmp_path, "a.json", MIXED)
        code, out, _ = run(["similar", fa, fa, "--method", "linear", "--seed", "9", "--trials", "4"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["seed"] == 9 and doc["trials"] == 0

    def test_split(self, tmp_path, capsys):
        doc = {"n": 2, "part0": [["1", "0"], ["0", "2"]], "part1": [["0", "1"], ["1", "0"]]}
        code, out, _ = run(["split", write(tmp_path, "a.json", doc)], capsys)
        res = json.loads(out)
        assert code == 0
        assert [b["eigenvalue"] for b in res["blocks"]] == ["1", "2"]
        assert res["witness"]["part1"] == [["0", "-1"], ["1", "0"]]

    def test_mucanon(self, tmp_path, capsys):
        code, out, _ = run(["mucanon", write(tmp_path, "a.json", {"n": 3, "part0": [["0", "5", "0"], ["0", "0", "3"], ["4", "0", "0"]]})], capsys)
        res = json.loads(out)
        assert code == 0
        assert res["canonical"]["part0"] == [["0", "60", "0"], ["0", "0", "1"], ["1", "0", "0"]]
        A = KMatrix([[0, 5, 0], [0, 0, 3], [4, 0, 0]])
        C = serialization.kmatrix_from_doc(res["C"])
        Ct = serialization.kmatrix_from_doc(res["Ctilde"])
        assert C @ A == serialization.kmatrix_from_doc(res["canonical"]) @ Ct

    def test_oracle(self, tmp_path, capsys):
        fa = write(tmp_path, "a.json", {"n": 2, "part0": [["0", "1"], ["0", "0"]]})
        fb = write(tmp_path, "b.json", {"n": 2, "part0": [["0", "0"], ["1", "0"]]})
        code, out, _ = run(["oracle", fa, fb], capsys)
        assert code == 0 and json.loads(out) == {"mu_similar": False}
        code, out, _ = run(["oracle", fa, fa], capsys)
        assert json.loads(out)["mu_similar"] is True

    def test_fuzz(self, tmp_path, capsys, monkeypatch):
        fa = write(tmp_path, "a.json", MIXED)
        _, out1, _ = run(["fuzz", fa, "--seed", "5"], capsys)
        _, out2, _ = run(["fuzz", fa, "--seed", "5"], capsys)
        assert out1 == out2
        monkeypatch.setenv("DUALCANON_SEED", "5")
        _, out3, err = run(["-v", "fuzz", fa], capsys)
        assert out3 == out1
        assert "seed 5" in err
        A = serialization.dual_from_doc(MIXED)
        assert serialization.dual_from_doc(json.loads(out1)) == fuzz_conjugate(A, 5)


class TestExitCodes:
    def test_parse_errors(self, tmp_path, capsys):
        assert run(["canon", write(tmp_path, "a.json", "{oops")], capsys)[0] == 2
        assert run(["canon", write(tmp_path, "b.json", {"n": 1, "part0": [["1.5"]], "part1": [["0"]]})], capsys)[0] == 2
        assert run(["canon", str(tmp_path / "missing.json")], capsys)[0] == 2
        fa = write(tmp_path, "c.json", MIXED)
        fb = write(tmp_path, "d.json", {"n": 2, "part0": [["1", "0"], ["0", "1"]], "part1": [["0", "0"], ["0", "0"]]})
        assert run(["similar", fa, fb], capsys)[0] == 2

    def test_spectrum_errors(self, tmp_path, capsys):
        irr = {"n": 2, "part0": [["0", "2"], ["1", "0"]], "part1": [["0", "0"], ["0", "0"]]}
        code, _, err = run(["canon", write(tmp_path, "a.json", irr)], capsys)
        assert code == 3 and "rational" in err.lower()
        big = {"n": 4, "part0": [["0"] * 4 for _ in range(4)], "part1": [["0"] * 4 for _ in range(4)]}
        assert run(["canon", write(tmp_path, "b.json", big)], capsys)[0] == 3
        assert run(["split", write(tmp_path, "c.json", irr)], capsys)[0] == 3


def test_module_entry_point(tmp_path):
    p = write(tmp_path, "a.json", MIXED)
    proc = subprocess.run([sys.executable, "-m", "dualcanon", "canon", p], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["family"] == "N3_MIXED_21"
