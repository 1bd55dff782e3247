import csv
import io
import json
import subprocess
import sys

import pytest

from superraman.cli import RunConfig, main, run


def _rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# superraman ") and lines[0].endswith("schema v1")
    return list(csv.reader(lines[1:]))


def test_scan_w_row(capsys):
    assert main(["scan-w", "--n-max", "3"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["N", "formula", "bruteforce", "residual"]
    n, formula, brute, resid = rows[-1]
    assert (n, formula, brute) == ("3", "1.333333333333", "1.333333333333")
    assert float(resid) <= 1e-9


def test_scan_partitions_single_row(capsys):
    assert main(["scan-partitions", "--n-max", "1"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["N", "n_i", "n_l", "n_f", "formula", "bruteforce", "residual"]
    assert len(rows) == 2
    assert rows[1][:5] == ["1", "1", "0", "0", "1"]
    assert float(rows[1][5]) == pytest.approx(1, abs=1e-12)


def test_dicke_corr_row(capsys):
    assert main(["dicke-corr", "--n", "2"]) == 0
    assert _rows(capsys.readouterr().out) == [["N", "correlation"], ["2", "0.5"]]


def test_dicke_corr_scan_even_only(capsys):
    assert main(["dicke-corr", "--n-max", "7"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert [r[0] for r in rows[1:]] == ["2", "4", "6"]


def test_rate_command(capsys):
    assert main(["rate", "--counts", "2,0,1", "--detuning", "0.5"]) == 0
    rows = _rows(capsys.readouterr().out)
    values = dict(zip(rows[0], rows[1]))
    assert float(values["total_rate"]) == pytest.approx(16.0)
    assert float(values["single_atom_rate"]) == pytest.approx(4.0)
    assert float(values["enhancement"]) == pytest.approx(4 / 3)


def test_geometry_fidelity_builtin_scan(capsys):
    assert main(["geometry-fidelity"]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["geometry", "N", "fidelity", "rate_ratio"]
    assert float(rows[1][2]) == pytest.approx(1, abs=1e-12)
    assert float(rows[1][3]) == pytest.approx(4, abs=1e-12)
    assert all(float(r[2]) <= 1 + 1e-12 for r in rows[1:])


def test_geometry_file(tmp_path, capsys):
    geo = tmp_path / "plane.json"
    geo.write_text(json.dumps({
        "positions": [[0, 0, 0], [1.3, 0, 0], [0.2, 2.1, 0]],
        "k_laser": [0.5, 0, 1], "k_scattered": [0.5, 0, -1],
    }))
    assert main(["geometry-fidelity", "--geometry", str(geo)]) == 0
    rows = _rows(capsys.readouterr().out)
    assert rows[1][:2] == ["plane.json", "3"]
    assert float(rows[1][2]) == pytest.approx(1, abs=1e-12)
    assert main(["rate", "--n", "3", "--geometry", str(geo)]) == 0


def test_json_output(tmp_path):
    out = tmp_path / "w.json"
    assert main(["scan-w", "--n-max", "4", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "superraman/scan-w/v1"
    assert [r["N"] for r in doc["rows"]] == [2, 3, 4]
    assert doc["rows"][1]["formula"] == pytest.approx(4 / 3)


def test_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["scan-partitions", "--n-max", "4", "--out", str(a)]) == 0
    assert main(["scan-partitions", "--n-max", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("argv, code", [
    (["scan-partitions", "--n-max", "9"], 3),
    (["scan-w", "--n-max", "3", "--detuning", "0"], 4),
    (["rate", "--n", "3", "--detuning", "0"], 4),
    (["scan-partitions"], 2),
    (["rate", "--counts", "0,1,2"], 2),
    (["rate", "--counts", "1,2"], 2),
    (["dicke-corr", "--n", "3"], 2),
    (["dicke-corr", "--n", "16"], 3),
    (["scan-w", "--n-max", "3", "--geometry", "x.json"], 2),
    (["rate", "--n", "3", "--geometry", "/nonexistent/geo.json"], 2),
    (["bogus"], 2),
    (["scan-w", "--n-max", "3", "--detuning", "50"], 2),
])
def test_exit_codes(argv, code, capsys):
    try:
        status = main(argv)
    except SystemExit as exc:  # argparse rejects malformed flags itself
        status = exc.code
    assert status == code
    assert capsys.readouterr().err


def test_residual_gate():
    # A tolerance below rounding makes the self-check fail with status 1.
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig("scan-partitions", n_max=3, tolerance=1e-300), out, err)
    assert code == 1
    assert "exceeds tolerance" in err.getvalue()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "superraman", "dicke-corr", "--n", "4"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "4,0.3333333333333"
