import csv
import io
import json
import math
import subprocess
import sys

import pytest

from chtriangle import scan as scanmod
from chtriangle.cli import main

LN3 = math.log(3)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# classify

@pytest.mark.parametrize(
    "m, alpha, verdict",
    [
        (LN3, math.pi, "Discrete"),
        (2.6339, 0.05, "NonDiscrete"),
        (2, 1.5708, "Unknown"),
    ],
)
def test_classify_examples(capsys, m, alpha, verdict):
    code, out, _ = run(capsys, "classify", "--m", repr(m), "--alpha", repr(alpha))
    assert code == 0
    assert out.splitlines()[0] == verdict


def test_classify_rounded_boundary_is_unknown(capsys):
    # four-digit rounding of (ln 3, pi) lands just outside the certified region
    code, out, _ = run(capsys, "classify", "--m", "1.0986", "--alpha", "3.1416")
    assert code == 0 and out.splitlines()[0] == "Unknown"


def test_classify_r_and_degrees(capsys):
    code, out, _ = run(capsys, "classify", "--r", repr(2 / math.sqrt(3)), "--alpha", "180", "--degrees")
    assert code == 0 and out.startswith("Discrete")


def test_classify_json_witness(capsys):
    code, out, _ = run(capsys, "classify", "--m", "2.6339", "--alpha", "0.05", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "NonDiscrete"
    assert data["witness"]["shimizu_deficit"] > 0
    assert set(data["witness"]) == {"xi", "nu", "shimizu_deficit"}


@pytest.mark.parametrize(
    "argv",
    [
        ("classify", "--m", "1", "--alpha", "0"),
        ("classify", "--m", "1", "--alpha", "7"),
        ("classify", "--m", "-1", "--alpha", "1"),
        ("classify", "--r", "0.5", "--alpha", "1"),
    ],
)
def test_classify_bad_range_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [("classify", "--alpha", "1"), ("classify", "--m", "1", "--r", "2", "--alpha", "1")])
def test_classify_bad_flags_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2


def test_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("CHP_TOLERANCE", "not-a-number")
    code, _, err = run(capsys, "classify", "--m", "1", "--alpha", "1")
    assert code == 2 and "CHP_TOLERANCE" in err
    monkeypatch.setenv("CHP_TOLERANCE", "1e-9")
    code, _, _ = run(capsys, "classify", "--m", "1", "--alpha", "1")
    assert code == 0


# scan

def test_scan_shape(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, _, err = run(capsys, "scan", "--m", "1:3", "--alpha", f"{math.pi / 2}:{3 * math.pi / 2}", "--steps", "3", "--out", out)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == list(scanmod.SCAN_HEADER)
    assert len(rows) == 1 + 9 and all(len(r) == 6 for r in rows)
    assert [float(r[0]) for r in rows[1:]] == sorted(float(r[0]) for r in rows[1:])
    assert "D edges" in err and "closed-form edge" in err


def test_scan_byte_stable_and_job_independent(capsys, tmp_path):
    paths = [tmp_path / f"s{k}.csv" for k in range(3)]
    for p, jobs in zip(paths, (1, 1, 2)):
        code, _, _ = run(capsys, "scan", "--m", "0:3", "--cos-alpha", "-1:0.99", "--steps", "4,7", "--jobs", jobs, "--out", p)
        assert code == 0
    data = [p.read_bytes() for p in paths]
    assert data[0] == data[1] == data[2]
    assert b"\r" not in data[0]
    assert data[0].count(b"\n") == 1 + 28


def test_scan_svg_one_mark_per_row(capsys, tmp_path):
    csv_path, svg_path = tmp_path / "s.csv", tmp_path / "s.svg"
    args = ("scan", "--m", "0.5:2.5", "--alpha", "0.2:6", "--steps", "5,6")
    assert run(capsys, *args, "--out", csv_path)[0] == 0
    assert run(capsys, *args, "--out", svg_path)[0] == 0
    n_rows = csv_path.read_text().count("\n") - 1
    svg = svg_path.read_text()
    assert svg.startswith("<svg") and "http" not in svg.replace('xmlns="http://www.w3.org/2000/svg"', "")
    marks = sum(svg.count(f'<rect class="{v}"') for v in "DNU")
    assert marks == n_rows == 30


def test_scan_unwritable_path_exits_3(capsys, tmp_path):
    code, _, err = run(capsys, "scan", "--m", "1", "--alpha", "1:2", "--steps", "2", "--out", tmp_path / "missing" / "x.csv")
    assert code == 3 and "cannot write" in err


def test_scan_bad_range_exits_2(capsys):
    code, _, _ = run(capsys, "scan", "--m", "1", "--alpha", "0:2", "--steps", "3")
    assert code == 2
    code, _, _ = run(capsys, "scan", "--m", "-1:1", "--alpha", "1:2")
    assert code == 2


def test_scan_json_report(capsys):
    code, out, err = run(capsys, "scan", "--m", "2", "--cos-alpha=-1:0.99", "--steps", "1,50", "--json")
    assert code == 0 and out.startswith("m,alpha,verdict")
    report = json.loads(err)
    assert report[0]["prop1_edge"] == -0.5
    assert report[0]["prop2_edge"] == pytest.approx(1 - 1 / (36 * math.cosh(1) ** 2))


# orbit

def test_orbit_identity_only(capsys):
    code, out, _ = run(capsys, "orbit", "--r", "1", "--max-len", "0")
    assert code == 0
    assert out == "word,re,im,x,y,rep\nId,0,0,0,0,Id\n"


def test_orbit_length_six_rows(capsys, tmp_path):
    out = tmp_path / "o.csv"
    svg = tmp_path / "o.svg"
    assert run(capsys, "orbit", "--r", "1", "--theta", "0", "--max-len", "6", "--out", out)[0] == 0
    assert run(capsys, "orbit", "--r", "1", "--theta", "0", "--max-len", "6", "--out", svg)[0] == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 1 + 2 + 4 + 6 + 10 + 16 + 26
    assert {r["rep"] for r in rows} == {"Id", "j1", "j2", "j1^2", "j2^2", "j1j2", "j2j1"}
    assert svg.read_text().count('<circle class="orbit"') == len(rows)


def test_orbit_guard_exits_2(capsys):
    code, _, err = run(capsys, "orbit", "--r", "1", "--max-len", "15")
    assert code == 2 and "14" in err


# verify

def test_verify_fast_passes(capsys):
    code, out, _ = run(capsys, "verify", "--fast")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("[PASS]") for line in lines[:-1])
    assert not any("region consistency" in line for line in lines)


def test_verify_tight_tolerance_fails_by_name(capsys):
    code, out, _ = run(capsys, "verify", "--fast", "--tolerance", "1e-14")
    assert code == 1
    failed = [line for line in out.splitlines() if line.startswith("[FAIL]")]
    assert failed
    assert out.splitlines()[-1].startswith("FAILED: ")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "chtriangle", "classify", "--m", "2", "--alpha", "1.5708"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("Unknown")
