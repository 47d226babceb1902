import io
import json

import numpy as np
import pytest

from shellsort_lab.analytics import ExperimentRecord, append_records, load_records
from shellsort_lab.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, parse_grid


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_parse_grid():
    assert parse_grid("1000:32000:x2") == [1000, 2000, 4000, 8000, 16000, 32000]
    assert parse_grid("8") == [8]
    assert parse_grid("100,200") == [100, 200]


def test_run_appends_grid_records(tmp_path):
    store = tmp_path / "r.jsonl"
    argv = ["run", "--sequence", "knuth2", "--n", "1000:32000:x2", "--trials", "3", "--seed", "42", "--out", str(store)]
    code, text = run(argv)
    assert code == EXIT_OK
    first = store.read_text().splitlines()
    assert len(first) == 6
    assert "mean_T" in text and "lb_value" in text
    code, _ = run(argv)
    second = store.read_text().splitlines()[6:]

    def strip(line):
        d = json.loads(line)
        d.pop("timestamp")
        return json.dumps(d, sort_keys=True)

    assert [strip(x) for x in first] == [strip(x) for x in second]


def test_run_exhaustive_increments():
    code, text = run(["run", "--increments", "4,2,1", "--n", "8", "--exhaustive"])
    assert code == EXIT_OK
    row = text.splitlines()[1].split()
    assert row[0] == "8"


def test_run_exhaustive_value(tmp_path):
    store = tmp_path / "x.jsonl"
    run(["run", "--increments", "1", "--n", "3,4,5", "--exhaustive", "--out", str(store)])
    recs = load_records(store)
    assert [r.mean_T for r in recs] == [1.5, 3.0, 5.0]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["run", "--sequence", "knuth2", "--n", "100"], "seed"),
        (["run", "--sequence", "jk3", "--n", "4", "--seed", "1"], "infeasible"),
        (["run", "--sequence", "shell", "--n", "64,32", "--seed", "1"], "grid"),
        (["run", "--n", "64", "--seed", "1"], "sequence"),
        (["verify", "--suite", "claims", "--max-n", "11"], "guard"),
        (["run", "--sequence", "bogus", "--n", "8", "--seed", "1"], "usage"),
    ],
)
def test_usage_errors(argv, code, capsys):
    rc, _ = run(argv)
    assert rc == EXIT_USAGE
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == code


def test_verify_codec_passes():
    code, text = run(["verify", "--suite", "codec", "--max-n", "7"])
    assert code == EXIT_OK
    assert json.loads(text)["passed"] is True


def test_verify_claims_reports_digit_bound_counterexample():
    code, text = run(["verify", "--suite", "claims", "--max-n", "6"])
    report = json.loads(text)
    # dominance holds everywhere; the digit bound does not
    assert all(c["dominance_violations"] == 0 for c in report["cases"])
    assert code == EXIT_FAIL
    assert report["counterexample"]["property"] == "n_ik < h_(k-1)/h_k"
    assert report["counterexample"]["permutation"] == [2, 3, 1]


def test_fit_on_synthetic_store(tmp_path):
    store = tmp_path / "s.jsonl"
    recs = [
        ExperimentRecord("custom", n, [1], 1, 0, float(n * n), 0.0, [float(n * n)], 1.0)
        for n in (10, 100, 1000, 10000)
    ]
    append_records(store, recs)
    code, text = run(["fit", "--store", str(store)])
    assert code == EXIT_OK
    lines = text.strip().splitlines()
    assert lines[0].startswith("family,exponent,target")
    assert lines[1].split(",")[1] == "2.000000"


def test_fit_knuth2_store(tmp_path):
    store = tmp_path / "k.jsonl"
    run(["run", "--sequence", "knuth2", "--n", "1000:16000:x2", "--trials", "5", "--seed", "1", "--out", str(store)])
    code, text = run(["fit", "--store", str(store), "--sequence", "knuth2"])
    assert code == EXIT_OK
    assert abs(float(text.splitlines()[1].split(",")[1]) - 5 / 3) < 0.1


def test_fit_polylog_ratio_series(tmp_path):
    store = tmp_path / "p.jsonl"
    run(["run", "--sequence", "pratt_2i3j", "--n", "1024:16384:x2", "--trials", "2", "--seed", "1", "--out", str(store)])
    code, text = run(["fit", "--store", str(store)])
    row = text.splitlines()[1].split(",")
    assert row[2] == "n*log2(n)^2" and len(row[5].split(";")) == 5


def test_fit_empty_store(tmp_path, capsys):
    store = tmp_path / "empty.jsonl"
    store.write_text("")
    assert run(["fit", "--store", str(store)])[0] == EXIT_USAGE
    assert json.loads(capsys.readouterr().err)["error"] == "insufficient_data"


def test_codec_commands(tmp_path):
    code, text = run(["codec", "roundtrip", "--n", "6", "--increments", "2,1", "--exhaustive"])
    report = json.loads(text)
    assert code == EXIT_OK and report["checked"] == 720 and report["failures"] == 0
    code, text = run(["codec", "roundtrip", "--n", "200", "--sequence", "jk3_conjecture", "--trials", "5", "--seed", "2"])
    assert code == EXIT_OK and json.loads(text)["checked"] == 5
    path = tmp_path / "p.desc"
    perm = [5, 3, 1, 4, 2, 6, 8, 7]
    assert run(["codec", "encode", "--perm", json.dumps(perm), "--sequence", "shell", "--out", str(path)])[0] == EXIT_OK
    code, text = run(["codec", "decode", "--file", str(path)])
    assert json.loads(text) == perm


def test_lb_table():
    code, text = run(["lb", "--increments", "2,1", "--n", "4"])
    assert code == EXIT_OK
    assert "16.00" in text.splitlines()[1]
