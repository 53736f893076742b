import json
import subprocess
import sys

import numpy as np
import pytest

from zeropattern.cli import main
from zeropattern.core import ComplexMatrix
from zeropattern.extremal import clique_plus_isolated, turan_partite_filled

from conftest import k3


@pytest.fixture
def write(tmp_path):
    def _write(A, name="m.json"):
        p = tmp_path / name
        p.write_text(ComplexMatrix(A).to_json())
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestRadius:
    def test_nilpotent(self, capsys, write):
        code, out, _ = run(capsys, "radius", write([[0, 1], [0, 0]]))
        data = json.loads(out)
        assert code == 0 and data["value"] == pytest.approx(0.5, abs=1e-9)
        assert len(data["witness"]) == 2 and "theta_star" in data

    def test_triangle(self, capsys, write):
        code, out, _ = run(capsys, "radius", write(k3()))
        assert json.loads(out)["value"] == pytest.approx(2)

    def test_malformed(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        code, out, err = run(capsys, "radius", str(p))
        assert code == 2 and out == "" and "error" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "radius", str(tmp_path / "absent.json"))
        assert code == 2


class TestOmega:
    def test_examples(self, capsys, write):
        assert json.loads(run(capsys, "omega", write(np.zeros((3, 3))))[1])["omega"] == 1
        assert json.loads(run(capsys, "omega", write(turan_partite_filled(4, 2)))[1])["omega"] == 2
        assert json.loads(run(capsys, "omega", write(np.ones((4, 4)) - np.eye(4)))[1])["omega"] == 4

    def test_tol(self, capsys, write):
        a = np.array([[0, 1e-3], [1e-3, 0]])
        assert json.loads(run(capsys, "omega", write(a))[1])["omega"] == 2
        assert json.loads(run(capsys, "omega", write(a), "--tol", "0.01")[1])["omega"] == 1


class TestCheck:
    def test_theorem1_equality(self, capsys, write):
        code, out, _ = run(capsys, "check", write(clique_plus_isolated(5, 3)), "--bound", "theorem1")
        data = json.loads(out)
        assert code == 0 and abs(data["slack"]) <= 1e-8 and data["holds"] is True

    def test_theorem1_diagonal_gate(self, capsys, write):
        a = np.array(k3().array)
        a[0, 0] = 1
        code, out, err = run(capsys, "check", write(a), "--bound", "theorem1")
        assert code == 2 and out == "" and "nonzero diagonal" in err

    def test_theorem2_equality(self, capsys, write):
        code, out, _ = run(capsys, "check", write(turan_partite_filled(4, 2)), "--bound", "theorem2")
        assert code == 0 and abs(json.loads(out)["slack"]) <= 1e-7

    def test_lemma1_and_turan(self, capsys, write):
        code, out, _ = run(capsys, "check", write(turan_partite_filled(6, 3)), "--bound", "lemma1", "--restarts", "5")
        assert code == 0 and json.loads(out)["lhs"] == pytest.approx(0.75, abs=1e-6)
        code, out, _ = run(capsys, "check", write(k3()), "--bound", "turan")
        assert code == 0 and json.loads(out)["lhs"] == 3

    def test_lemma1_rejects_complex(self, capsys, write):
        code, _, err = run(capsys, "check", write([[0, 1j], [0, 0]]), "--bound", "lemma1")
        assert code == 2

    def test_violation_exit_code(self, capsys, write, monkeypatch):
        import zeropattern.verify as v

        monkeypatch.setitem(v.CHECKS, "turan", lambda A, r, s: v.BoundReport("turan", 9.0, 1.0, A.n, 2, 2))
        code, out, _ = run(capsys, "check", write(k3()), "--bound", "turan")
        assert code == 1 and json.loads(out)["holds"] is False


class TestExtremal:
    def test_partite(self, capsys, tmp_path):
        out_file = tmp_path / "p.json"
        code, _, _ = run(capsys, "extremal", "--kind", "partite", "-n", "4", "-r", "2", "--out", str(out_file))
        A = ComplexMatrix.from_json(out_file.read_text())
        assert code == 0 and A == turan_partite_filled(4, 2)
        assert int(A.array.real.sum()) == 10

    def test_clique_stdout(self, capsys):
        code, out, _ = run(capsys, "extremal", "--kind", "clique", "-n", "5", "-r", "3")
        assert code == 0 and ComplexMatrix.from_json(out) == clique_plus_isolated(5, 3)

    def test_r_exceeds_n(self, capsys):
        code, out, err = run(capsys, "extremal", "--kind", "partite", "-n", "2", "-r", "3")
        assert code == 2 and out == ""

    def test_proposition(self, capsys):
        code, out, _ = run(capsys, "extremal", "--kind", "proposition", "--labels", "1,2,0", "--x", "1,1,0", "--c", "2")
        A = ComplexMatrix.from_json(out)
        np.testing.assert_allclose(A.array, [[0, 1, 0], [1, 0, 0], [0, 0, 0]], atol=1e-15)

    def test_proposition_bad_config(self, capsys):
        code, _, err = run(capsys, "extremal", "--kind", "proposition", "--labels", "1,2", "--x", "1,0")
        assert code == 2 and "equality configuration" in err

    def test_missing_n(self):
        with pytest.raises(SystemExit) as info:
            main(["extremal", "--kind", "clique"])
        assert info.value.code == 2


class TestMs:
    def test_examples(self, capsys, write):
        assert json.loads(run(capsys, "ms", write(k3()))[1])["value"] == pytest.approx(2 / 3, abs=1e-9)
        data = json.loads(run(capsys, "ms", write(np.zeros((3, 3))))[1])
        assert data["value"] == 0 and data["converged"] is False
        assert json.loads(run(capsys, "ms", write(turan_partite_filled(6, 3)))[1])["value"] == pytest.approx(0.75, abs=1e-6)


class TestSweep:
    def test_hermitian_rows(self, capsys, tmp_path):
        out_file = tmp_path / "r.csv"
        code, out, _ = run(
            capsys, "sweep", "--ensemble", "hermitian_gaussian", "-n", "8", "--trials", "100",
            "--bound", "theorem1", "--out", str(out_file),
        )
        lines = out_file.read_text().splitlines()
        assert code == 0 and len(lines) == 101
        assert all(line.split(",")[7] == "true" for line in lines[1:])
        assert json.loads(out)["violations"] == 0

    def test_zero_trials(self, capsys):
        code, out, err = run(capsys, "sweep", "--ensemble", "zero_one_random", "-n", "4", "--trials", "0", "--bound", "theorem2")
        assert code == 2 and out == ""

    def test_inapplicable(self, capsys):
        code, _, err = run(capsys, "sweep", "--ensemble", "complex_gaussian", "-n", "4", "--bound", "theorem1")
        assert code == 2 and "does not apply" in err

    def test_byte_identical(self, capsys, tmp_path):
        files = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for f in files:
            run(capsys, "sweep", "--ensemble", "zero_one_random", "-n", "6", "--density", "0.5",
                "--trials", "10", "--seed", "7", "--bound", "lemma1", "--out", str(f))
        assert files[0].read_bytes() == files[1].read_bytes()

    def test_stdout_is_pure_csv(self, capsys):
        code, out, err = run(capsys, "sweep", "--ensemble", "complex_gaussian", "-n", "4", "--trials", "3", "--bound", "theorem2")
        assert out.splitlines()[0].startswith("bound_id,") and len(out.splitlines()) == 4
        assert json.loads(err)["trials"] == 3


def test_module_entry_point(tmp_path):
    p = tmp_path / "m.json"
    p.write_text(ComplexMatrix([[0, 1], [0, 0]]).to_json())
    proc = subprocess.run([sys.executable, "-m", "zeropattern", "radius", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == pytest.approx(0.5)
