import json
import subprocess
import sys

import pytest

from paratwist.cli import main
from paratwist.data import path as data_path

TABLE = str(data_path("upsilon20_p3.txt"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    assert run(capsys, "classify", "--form", "81,44,6", "--p", "3") == (0, "Case I\n", "")
    code, out, _ = run(capsys, "classify", "--form", "81,18,2", "--p", "3", "--verbose")
    assert code == 0 and out.startswith("Case IV")


@pytest.mark.parametrize("argv", [
    ["classify", "--form", "81,44,6", "--p", "3", "--N", "2"],
    ["classify", "--form", "81,44,6", "--p", "2"],
    ["classify", "--form", "81,44", "--p", "3"],
    ["classify", "--form", "1,3,1", "--p", "3"],
    ["twist", "--form", "27,1,1", "--p", "3", "--k", "20"],
    ["bogus"],
])
def test_input_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2


def test_twist_worked_example(capsys):
    code, out, _ = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20",
                       "--coeffs", TABLE, "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["case"] == "I"
    assert rep["value"] == "-81320673280/14348907"
    assert rep["consumed"] == [[1, 0, 18], [2, 0, 9]]
    assert rep["approximate"] is False
    code, out, _ = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20", "--coeffs", TABLE)
    assert "a_chi = -81320673280/14348907" in out


def test_twist_symbolic_and_support(capsys):
    code, out, _ = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20")
    assert code == 0 and "a[1,0,18]" in out and "a[2,0,9]" in out
    code, out, _ = run(capsys, "support", "--form", "81,44,6", "--p", "3", "--k", "20")
    assert out.split() == ["1,0,18", "2,0,9"]


def test_missing_coefficients_exit_3(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("N=1 k=20\n")
    code, _, err = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20", "--coeffs", str(empty))
    assert code == 3 and "1,0,18" in err and "2,0,9" in err
    code, out, _ = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20",
                       "--coeffs", str(empty), "--assume-zero-outside-box")
    assert code == 0 and "a_chi = 0" in out and "approximate" in out
    code, _, _ = run(capsys, "twist", "--form", "81,44,6", "--p", "3", "--k", "20",
                     "--coeffs", str(tmp_path / "nope.txt"))
    assert code == 3


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--form", "81,78,19")
    assert code == 0 and out.startswith("1,0,18 det_sign=")


def test_lemma_check(capsys):
    code, out, _ = run(capsys, "lemma-check", "--p", "3", "--exhaustive")
    assert code == 0 and "MISMATCH" not in out
    code, out, _ = run(capsys, "lemma-check", "--p", "5,7", "--samples", "50", "--seed", "1")
    assert code == 0


def test_maass_vanish(capsys):
    code, out, _ = run(capsys, "maass-vanish", "--p", "3", "--k", "10")
    assert code == 0 and out.startswith("all branches vanish")
    code, out, _ = run(capsys, "maass-vanish", "--p", "5", "--k", "12", "--sweep", "random", "--count", "20")
    assert code == 0 and "(20 cases)" in out
    assert run(capsys, "maass-vanish", "--p", "3", "--k", "19")[0] == 2


def test_symmetry_check(capsys):
    code, out, _ = run(capsys, "symmetry-check", "--p", "3", "--k", "19,20", "--count", "10")
    assert code == 0 and "held in all 20 cases" in out
    code, _, _ = run(capsys, "symmetry-check", "--p", "3", "--N", "3")
    assert code == 2


def test_ingest_validate(tmp_path, capsys):
    code, out, _ = run(capsys, "ingest-validate", TABLE)
    assert code == 0 and "2 entries" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("N=1 k=20\n1,0,18 1\n81,78,19 2\n")
    assert run(capsys, "ingest-validate", str(bad))[0] == 2
    jac = tmp_path / "jac.txt"
    jac.write_text("k=10\n-3 1\n-4 2\n")
    code, out, _ = run(capsys, "ingest-validate", "--jacobi", str(jac))
    assert code == 0 and "2 entries" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "paratwist", "classify", "--form", "81,6,1", "--p", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "Case II\n"
