import csv
import io
import json
import subprocess
import sys

import pytest

from graphcx import cli
from graphcx import tables as tb


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_parse_range():
    assert cli.parse_range("7") == [7]
    assert cli.parse_range("3-5") == [3, 4, 5]
    assert cli.parse_range("3,5,7") == [3, 5, 7]
    assert cli.parse_range(None) is None
    with pytest.raises(cli.UsageError):
        cli.parse_range(",")


def test_complex_f_vector(capsys):
    code, doc = run_json(capsys, "complex", "--family", "matching", "--n", "5")
    assert code == 0
    assert doc["result"]["f_vector"] == {"-1": 1, "0": 10, "1": 15}
    assert doc["result"]["reduced_euler"] == -6


def test_homology_with_mod_p(capsys):
    code, doc = run_json(capsys, "homology", "--family", "matching", "--n", "7", "--mod-p", "2,3")
    assert code == 0
    dim1 = next(e for e in doc["result"] if e["dim"] == 1)
    assert dim1["betti_mod_p"] == {"2": 0, "3": 1}


def test_homology_window(capsys):
    code, out, _ = run(capsys, "homology", "--family", "not-connected", "--n", "6", "--k", "3", "--dim", "2")
    assert code == 0 and "Z^180" in out


def test_morse_verify(capsys):
    code, doc = run_json(capsys, "morse", "verify", "--n", "5", "--k", "4")
    assert code == 0
    assert doc["result"]["steps"] == {"1": 32, "2": 64, "3": 3}
    assert doc["result"]["acyclic"] and doc["result"]["perfect"]


def test_morse_collapse(capsys):
    code, doc = run_json(capsys, "morse", "collapse", "--n", "4", "--k", "3")
    assert code == 0
    assert doc["result"][-1]["face"] == []


def test_poset_commands(capsys):
    code, doc = run_json(capsys, "poset", "mobius", "--n", "3-4")
    assert code == 0
    assert [(r["n"], r["elements"], r["mu"]) for r in doc["result"]] == [(3, 8, -1), (4, 55, -2)]
    code, out, _ = run(capsys, "poset", "covers", "--n", "5", "--k", "3", "--format", "csv")
    assert code == 0
    assert list(csv.reader(io.StringIO(out)))[1] == ["5", "40", "15", "25"]
    code, doc = run_json(capsys, "poset", "ranks", "--n", "4", "--k", "2")
    assert code == 0 and doc["result"][0]["rank_ok"] is True


def test_series_commands(capsys):
    code, out, _ = run(capsys, "series", "--family", "mobius", "--k", "3", "--n", "3-7", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert [int(r[2]) for r in rows[1:]] == [-1, 3, -21, 180, -2010]
    code, doc = run_json(capsys, "series", "--family", "nminus3", "--n", "7")
    assert doc["result"] == [{"n": 7, "coefficient": "-1/28", "n!*coefficient": -180}]


def test_character_commands(capsys):
    code, doc = run_json(capsys, "character", "omega", "--n", "4")
    assert code == 0
    assert doc["result"] == {"4": 0, "3 1": -1, "2 2": 2, "2 1 1": 0, "1 1 1 1": 2}
    code, out, _ = run(capsys, "character", "wn", "--n", "8", "--format", "markdown")
    assert "| 8 | 96 |" in out


def test_table_json_provenance(capsys):
    code, doc = run_json(capsys, "table", "3", "--n", "7")
    assert code == 0 and doc["ok"]
    cell = doc["result"]["rows"][0]["cells"]["1"]
    assert cell["provenance"] == {"computed": "computed", "expected": "embedded"}


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "morse")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("fmt", ["plain", "markdown", "csv", "json"])
def test_every_format_renders(capsys, fmt):
    code, out, _ = run(capsys, "table", "5", "--n", "2-4", "--format", fmt)
    assert code == 0 and out.strip()


def test_exit_code_refused(capsys):
    code, out, err = run(capsys, "table", "3", "--n", "10")
    assert code == 2 and out == "" and "refused" in err


def test_exit_code_domain_error(capsys):
    code, _, err = run(capsys, "poset", "mobius", "--n", "3", "--k", "4")
    assert code == 2 and err.startswith("graphcx:")


def test_exit_code_mismatch(capsys, monkeypatch):
    real = tb.load_expected

    def tampered():
        data = real()
        data["3"]["rows"]["7"]["1"] = "Z_5"
        return data

    monkeypatch.setattr(tb, "load_expected", tampered)
    code, doc = run_json(capsys, "table", "3", "--n", "7")
    assert code == 1 and doc["ok"] is False
    assert doc["result"]["rows"][0]["status"] == "mismatch"


def test_output_stable_across_runs_and_jobs(capsys):
    a = run(capsys, "table", "3", "--n", "5-8", "--format", "json")
    b = run(capsys, "table", "3", "--n", "5-8", "--format", "json")
    c = run(capsys, "table", "3", "--n", "5-8", "--format", "json", "--jobs", "2")
    assert a == b == c


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "graphcx", "character", "wn", "--n", "6", "--format", "csv"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "n,w_n\n6,6\n"
