import json
import shutil
import subprocess
import sys

import pytest

from recollement import cli, io
from recollement import torsion as tt


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_enumerate(capsys, kA2_pairs, kA2):
    code, out, _ = run(capsys, "enumerate", "--algebra", "kA2")
    assert code == 0 and out.startswith("5 torsion pairs")
    code, doc = run_json(capsys, "enumerate", "--algebra", "kA2")
    assert doc["count"] == 5
    assert [cli.pair_from_json(p) for p in doc["pairs"]] == kA2_pairs


def test_check_pair_witness(capsys):
    code, out, _ = run(capsys, "check-pair", "--x", "S(2)", "--y", "S(2)")
    assert code == 1
    assert "Hom(S(2), S(2)) != 0, e.g. {2: [[1]]}" in out


def test_check_pair_from_file(capsys):
    code, doc = run_json(capsys, "check-pair", "--pair", "kA2_tilting")
    assert code == 0 and doc["verdict"] == "true"
    assert cli.pair_from_json(doc["pair"]) == tt.TorsionPair.of(["P(1)", "S(1)"], ["S(2)"])


def test_worked_example_command(capsys):
    code, out, _ = run(capsys, "example-3-6")
    assert code == 0
    assert out.rstrip().endswith("ALL GOLDEN CHECKS PASS")
    for line in ("= (add((P(1)|0) + (S(2)|S(2)) + (P(1)|S(2)) + (0|S(2)) + (S(1)|0)), add((S(2)|0) + (0|S(1))))",
                 "= (add((S(2)|0) + (S(2)|S(2)) + (0|S(2))), add((S(1)|0) + (S(1)|S(1)) + (0|S(1))))",
                 "(i^*(X), i^!(Y)) = (add(S(1)), add(S(2) + P(1)))",
                 "(j^*(X), j^*(Y)) = (add(S(2) + P(1) + S(1)), add(S(2)))"):
        assert line in out
    expected = (io.data_dir() / "expected" / "worked_example.txt").read_text(encoding="utf-8")
    assert out.startswith(expected)


def test_worked_example_detects_drift(capsys, tmp_path, monkeypatch):
    data = tmp_path / "data"
    shutil.copytree(io.data_dir(), data)
    path = data / "expected" / "worked_example.txt"
    path.write_text(path.read_text().replace("add(S(1))", "add(S(2))", 1))
    monkeypatch.setenv(io.DATA_ENV, str(data))
    code, out, _ = run(capsys, "example-3-6")
    assert code == 1 and "GOLDEN CHECKS FAILED" in out and "--- expected" in out


def test_deterministic_output(capsys):
    a = run(capsys, "example-3-6", "--json")
    b = run(capsys, "example-3-6", "--json")
    assert a == b


@pytest.mark.parametrize("argv", [
    ["check-pair", "--x", "Q(9)", "--y", ""],
    ["check-pair", "--prime", "4", "--x", "", "--y", ""],
    ["check-pair", "--pair", "no_such_file"],
    ["enumerate", "--budget-subobjects", "0"],
    ["atoms", "--instance", "missing_instance"],
])
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 3 and err.startswith("error:")


def test_predicates_budget_undetermined(capsys):
    code, doc = run_json(capsys, "predicates", "--x", "S(2),P(1),S(1)", "--y", "", "--budget-subobjects", "1")
    assert code == 2 and doc["hereditary"] == "undetermined"
    code, doc = run_json(capsys, "predicates", "--pair", "kA2_tilting")
    assert code == 0 and doc["tilting"] == "true" and doc["hereditary"] == "false"


def test_atoms_and_hom(capsys):
    code, doc = run_json(capsys, "atoms", "--instance", "t2_kA2")
    assert code == 0 and len(doc["atoms"]) == 11 and doc["certified"]
    code, doc = run_json(capsys, "hom", "--m", "P(1)", "--n", "P(1)+S(1)")
    assert code == 0 and doc["dim"] == 2


def test_decompose(capsys, tmp_path, kA2):
    code, out, _ = run(capsys, "decompose", "--instance", "t2_kA2", "--functor", "i_upper",
                       "--object", "(P(1)|S(2))")
    assert code == 0 and out.strip() == "i^*((P(1)|S(2))) = S(1)"
    path = tmp_path / "rep.json"
    path.write_text(json.dumps(io.rep_to_dict(kA2.sum_of(["P(1)", "S(2)", "S(2)"]))))
    code, doc = run_json(capsys, "decompose", "--file", str(path))
    assert doc["decomposition"] == {"P(1)": 1, "S(2)": 2}


def test_glue_commands(capsys, t2):
    code, doc = run_json(capsys, "glue", "--instance", "t2_kA2", "--a-pair", "kA2_tilting", "--c-pair", "kA2_simple")
    assert code == 0
    assert cli.pair_from_json(doc["glued"]) == cli.pair_from_json(io.read_json(
        io.data_dir() / "pairs" / "t2_glue_first.json"))
    code, doc = run_json(capsys, "glue", "--instance", "t2_kA2", "--a-pair", "kA2_simple",
                         "--c-pair", "kA2_simple", "--closure")
    assert code == 0 and doc["closure"]["hereditary"]["status"] == "skipped"
    code, out, _ = run(capsys, "glue", "--instance", "t2_kA2", "--a-pair", "kA2_simple", "--c-pair", "kA2_simple",
                       "--ttf", "", "S(2),P(1),S(1)", "", "", "S(2),P(1),S(1)", "")
    assert code == 3 and "i^* not exact" in out
    code, out, _ = run(capsys, "glue", "--instance", "product_kA2", "--a-pair", "kA2_all", "--c-pair", "kA2_all",
                       "--ttf", "", "S(2),P(1),S(1)", "", "", "S(2),P(1),S(1)", "")
    assert code == 0 and "glued TTF-triple" in out


def test_restrict_and_closure_equivalences(capsys):
    code, doc = run_json(capsys, "restrict", "--instance", "t2_kA2", "--pair", "t2_restrict")
    assert code == 1 and doc["condition"] is False and not doc["c_is_pair"]
    assert cli.pair_from_json(doc["a"]) == tt.TorsionPair.of(["S(1)"], ["S(2)", "P(1)"])
    code, doc = run_json(capsys, "lemma34", "--instance", "t2_kA2", "--pair", "t2_restrict")
    assert code == 0 and doc["containments"]["i_*i^!(Y) in Y"] is True


def test_verify_and_probe(capsys):
    code, doc = run_json(capsys, "verify-recollement", "--instance", "t2_kA2")
    assert code == 0 and doc["ok"]
    code, doc = run_json(capsys, "probe", "--instance", "t2_kA2", "--functor", "i_upper", "--trials", "200")
    assert code == 1 and doc["counterexamples"]["i_upper"]["trial"] >= 0
    code, doc = run_json(capsys, "probe", "--instance", "t2_kA2", "--functor", "i_shriek", "--trials", "30")
    assert code == 0 and doc["counterexamples"] == {"i_shriek": None}


def test_roundtrip(capsys):
    code, doc = run_json(capsys, "roundtrip", "--instance", "t2_kA2")
    assert code == 0 and len(doc["combinations"]) == 25 and doc["reconstruction"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "recollement.cli", "enumerate"], capture_output=True, text=True)
    assert proc.returncode == 0 and "5 torsion pairs" in proc.stdout
