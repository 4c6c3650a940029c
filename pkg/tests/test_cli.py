import json
import subprocess
import sys

import pytest

from bchlab.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_largest_leaders_text(capsys):
    code, out, _ = run(["cosets", "--q", "3", "--m", "3", "--lambda", "2", "--largest", "2"], capsys)
    assert code == 0
    assert "delta1=7" in out and "delta2=4" in out and "MATCH" in out


def test_smallest_nonleader(capsys):
    code, out, _ = run(["cosets", "--q", "3", "--m", "4", "--lambda", "2", "--smallest-nonleader"], capsys)
    assert code == 0 and "14" in out


def test_bch_dimension_and_distance(capsys):
    code, out, _ = run(["bch", "--q", "3", "--m", "3", "--lambda", "2", "--delta", "4", "--dim-closed"], capsys)
    assert code == 0 and "k=7" in out
    code, out, _ = run(["bch", "--q", "3", "--m", "3", "--lambda", "2", "--delta", "7", "--min-distance"], capsys)
    assert code == 0 and "7" in out


def test_weights_json_is_deterministic(capsys, tmp_path):
    args = ["weights", "--q", "3", "--m", "3", "--family", "C-delta1", "--verify"]
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--json", str(p1)]) == 0
    assert main(args + ["--json", str(p2)]) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()
    report = json.loads(p1.read_text())
    assert "timing_seconds" not in json.dumps(report)


def test_timing_only_when_asked(capsys):
    code, out, _ = run(["cosets", "--q", "3", "--m", "3", "--lambda", "2", "--largest", "1", "--json", "-",
                        "--timing"], capsys)
    assert code == 0 and "timing_seconds" in out


def test_csv_output(capsys, tmp_path):
    path = tmp_path / "w.csv"
    code, _, _ = run(["weights", "--q", "5", "--m", "3", "--family", "V3", "--enumerate", "--csv", str(path)],
                     capsys)
    assert code == 0
    header, *rows = path.read_text().splitlines()
    cols = header.split(",")
    assert {"weight", "frequency"} <= set(cols)
    freq = sum(int(r.split(",")[cols.index("frequency")]) for r in rows)
    assert freq == 5**6


def test_usage_errors_exit_1(capsys):
    assert run(["cosets", "--q", "3"], capsys)[0] == 1
    assert run(["weights", "--q", "3", "--m", "4", "--family", "V1", "--table"], capsys)[0] == 1
    assert run(["bch", "--q", "5", "--m", "3", "--lambda", "3", "--delta", "4"], capsys)[0] == 1
    with pytest.raises(SystemExit) as ex:
        main(["nope"])
    assert ex.value.code == 1


def test_repro_budget_skips_but_succeeds(capsys):
    code, out, _ = run(["repro-all", "--claims", "5", "--max-field", "3^4"], capsys)
    assert code == 0
    assert "SKIP" in out or "skip" in out


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "bchlab.cli", "cosets", "--q", "3", "--m", "3", "--lambda", "2",
                          "--largest", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and "delta1=7" in res.stdout
