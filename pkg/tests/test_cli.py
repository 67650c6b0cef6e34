import csv
import io
import json

import pytest

from kmn_ebi.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_params(capsys):
    code, doc = run_json(capsys, "params", 7, 4)
    assert code == 0
    assert (doc["q"], doc["r"], doc["blocks"], doc["star"]) == (2, 1, [3, 3], 1)
    code, doc = run_json(capsys, "params", 9, 2)
    assert (doc["q"], doc["r"]) == (4, 1)


def test_params_invalid(capsys):
    code, _, err = run(capsys, "params", 6, 4)
    assert code == 2 and "m must be odd" in err


def test_construct_indices(capsys):
    code, doc = run_json(capsys, "construct", 5, 4, "--labeling", "f")
    assert code == 0 and doc["summary"]["index"] == 0
    code, doc = run_json(capsys, "construct", 5, 4, "--labeling", "fprime")
    assert code == 0 and doc["summary"]["index"] == 2
    assert doc["construction"]["rebalanced_columns"] == []


def test_construct_reports_rebalance(capsys):
    code, doc = run_json(capsys, "construct", 13, 8, "--labeling", "fprime")
    assert code == 0 and doc["summary"]["index"] == 6
    assert doc["construction"]["rebalanced_columns"] == [7]


def test_construct_fprime_n2(capsys):
    code, _, _ = run(capsys, "construct", 5, 2, "--labeling", "fprime")
    assert code == 2


def test_construct_round_trip(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, doc = run_json(capsys, "construct", 11, 6, "--labeling", "fprime", "-o", path)
    assert code == 0
    code, again = run_json(capsys, "summarize", path)
    assert code == 0
    assert again["summary"] == doc["summary"]
    assert again["rows"] == doc["rows"]


def test_summarize_bad_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"m": 3, "n": 2, "rows": ["11", "11", "11"]}')
    code, _, err = run(capsys, "summarize", path)
    assert code == 2 and "edge-friendly" in err


def test_trajectory_fprime(capsys):
    code, doc = run_json(capsys, "trajectory", 7, 4, "--labeling", "fprime")
    assert code == 0
    assert [s["index_after"] for s in doc["steps"]] == [2, 2, 3, 4]
    assert doc["achieved"] == [2, 3, 4]


def test_trajectory_csv(capsys):
    code, out, _ = run(capsys, "trajectory", 9, 4, "--labeling", "f", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["step", "pivot", "a_one", "a_zero", "index_after"]
    assert sorted({0} | {int(r["index_after"]) for r in rows}) == [0, 1, 2, 3]


def test_trajectory_k32(capsys):
    code, doc = run_json(capsys, "trajectory", 3, 2, "--labeling", "f")
    assert code == 0 and doc["achieved"] == [0]


def test_verify_with_oracle(capsys):
    code, doc = run_json(capsys, "verify", 7, 4, "--oracle", "--seed", 3)
    assert code == 0
    assert doc["theorem"] == doc["constructive"] == doc["oracle"]["indices"] == [0, 1, 2, 3, 4]
    assert doc["spot_checks"]["outside"] == []


def test_verify_large_without_oracle(capsys):
    code, doc = run_json(capsys, "verify", 41, 20)
    assert code == 0
    assert doc["oracle"]["status"] == "skipped"
    # q = 3, r = 8 so the top index is 41 + 20 - 6 - 4
    assert doc["constructive"] == list(range(52))


def test_verify_cap_exhaustion(capsys):
    code, doc = run_json(capsys, "verify", 7, 6, "--oracle", "--cap", 1000)
    assert code == 3
    assert doc["oracle"]["status"] == "cap_exceeded"
    assert doc["agree"] is True


def test_verify_invalid(capsys):
    code, _, _ = run(capsys, "verify", 8, 4)
    assert code == 2


def test_brute(capsys):
    code, doc = run_json(capsys, "brute", 3, 2)
    assert code == 0 and doc["canonical"]["indices"] == [0] and doc["naive_agrees"] is True
    code, doc = run_json(capsys, "brute", 5, 4)
    assert doc["canonical"]["indices"] == [0, 1, 2, 3]


def test_brute_k11_4(capsys):
    code, doc = run_json(capsys, "brute", 11, 4)
    assert code == 0 and doc["canonical"]["indices"] == [0, 1, 2, 3, 4, 5]
    assert "naive" not in doc


def test_brute_cap_and_invalid(capsys):
    code, doc = run_json(capsys, "brute", 9, 4, "--cap", 100)
    assert code == 3 and doc["status"] == "cap_exceeded"
    code, _, _ = run(capsys, "brute", 1, 1)
    assert code == 2


def test_sweep(capsys):
    code, doc = run_json(capsys, "sweep", 3)
    assert code == 0 and doc["pairs"] == 1 and doc["rows"][0]["ok"] is True
    code, doc = run_json(capsys, "sweep", 2)
    assert code == 0 and doc["pairs"] == 0
    code, out, _ = run(capsys, "sweep", 2, "--format", "csv")
    assert out.strip() == "m,n,q,r,theorem_max,constructive_max,ok"


def test_sweep_41(capsys):
    code, doc = run_json(capsys, "sweep", 41)
    assert code == 0 and doc["mismatches"] == 0 and doc["pairs"] == 210


def test_table_output(capsys):
    code, out, _ = run(capsys, "construct", 5, 4)
    assert code == 0 and "index=0" in out
    code, out, _ = run(capsys, "verify", 5, 4, "--oracle")
    assert "verdict      agree" in out


@pytest.mark.parametrize("argv", [["params"], ["bogus"], ["verify", "7", "4", "--cap", "0"]])
def test_bad_arguments(capsys, argv):
    assert main(argv) == 2
