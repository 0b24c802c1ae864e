import json
import subprocess
import sys

import pytest

from ehtw.cli import main
from helpers import cli_cases, write_cli_fixtures


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    return write_cli_fixtures(tmp_path_factory.mktemp("cli"))


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    doc = json.loads(out.out) if out.out.strip() else None
    return code, doc, out.err


def test_every_subcommand_succeeds_and_is_deterministic(files, capsys):
    for argv in cli_cases(files):
        code, first, err = run(argv, capsys)
        assert code == 0, (argv, err)
        assert first["schema"] == 1 and first["exit_code"] == 0
        assert "seconds" in first["timing"]
        code, second, _ = run(argv, capsys)
        first.pop("timing"), second.pop("timing")
        assert first == second, argv


def test_examples(files, capsys):
    code, doc, _ = run(["banana", files["k23"], "--a", "0", "--b", "1"], capsys)
    assert doc["result"]["k"] == 3 and doc["result"]["min_separator"] == [2, 3, 4]
    code, doc, _ = run(["class", files["k23"]], capsys)
    assert code == 1 and doc["result"]["verdict"] == "NOT_IN_C"
    code, doc, _ = run(["class", files["w5"], "--t", "3"], capsys)
    assert code == 1 and doc["result"]["verdict"] == "NOT_IN_C_3"
    code, doc, _ = run(["solve", "r_coloring", files["c5"], "--r", "2"], capsys)
    assert code == 1 and doc["result"]["value"] is False
    code, doc, _ = run(["td", "center", files["p7"], files["p7td"]], capsys)
    assert code == 0 and doc["command"] == "td center"
    code, doc, _ = run(["hubpart", files["c6hub"], "--a", "0", "--b", "1"], capsys)
    assert doc["result"]["k"] == 1


def test_input_errors(files, tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n0 x\n")
    code, doc, err = run(["class", str(bad)], capsys)
    assert code == 2 and doc is None and "line 3" in err
    code, _, err = run(["class", str(tmp_path / "missing.txt")], capsys)
    assert code == 2
    code, _, _ = run(["banana", files["k23"], "--a", "2", "--b", "0"], capsys)  # adjacent
    assert code == 2
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 2
    code, _, _ = run(["td", "validate", files["p7"]], capsys)
    assert code == 2


def test_limit_exit_code(files, capsys):
    code, doc, _ = run(["detect", files["k23"], "--budget", "1"], capsys)
    assert code == 3
    code, _, err = run(["generate", "random_gnp_filtered_Ct", "--n", "12", "--t", "2",
                        "--param", "p=0.9", "--param", "max_attempts=2"], capsys)
    assert code == 3 and err.startswith("limit:")


def test_json_out_and_files(files, tmp_path, capsys):
    out = tmp_path / "r.json"
    g = tmp_path / "g.txt"
    code, doc, _ = run(["generate", "cycles", "--n", "6", "--out", str(g), "--json", str(out)], capsys)
    assert code == 0 and json.loads(out.read_text())["result"]["n"] == 6
    code, doc, _ = run(["class", str(g)], capsys)
    assert doc["result"]["verdict"] == "IN_C"
    csv = tmp_path / "rows.csv"
    run(["experiment", "banana", "--family", "cycles", "--n-list", "6", "--csv", str(csv)], capsys)
    assert csv.read_text().splitlines()[0] == "n,seed,verdict,max_banana"
    td = tmp_path / "c8.td"
    code, _, _ = run(["td", "exact", files["c8"], "--out", str(td)], capsys)
    code, doc, _ = run(["td", "validate", files["c8"], str(td)], capsys)
    assert code == 0 and doc["result"]["width"] == 2


def test_experiment_timing_moves_to_envelope(files, capsys):
    code, doc, _ = run(["experiment", "banana", "--family", "cycles", "--n-list", "6,7"], capsys)
    assert "timing" not in doc["result"] and "detail" in doc["timing"]


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "ehtw", "class", files["c5"]], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["verdict"] == "IN_C"
