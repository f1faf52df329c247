import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest

from trigineq.cli import ReportEnvelope, RunConfig, UsageError, emit, main, parse_angle, parse_interval, parse_range, run

SCHEMA = json.loads((Path(__file__).parents[1] / "schema" / "report-v1.json").read_text())


def invoke(capsysbinary, *argv):
    code = main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err.decode()


def test_parse_range():
    assert parse_range("5") == [5]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,3,7") == [1, 3, 7]
    for bad in ("x", "4..1", "1..", ""):
        with pytest.raises(UsageError, match="malformed range"):
            parse_range(bad)


def test_parse_angles_and_intervals():
    assert parse_angle("pi") == 1
    assert parse_angle("2pi/3") == Fraction(2, 3)
    assert parse_angle("3pi/4") == Fraction(3, 4)
    assert parse_interval("0..2pi/3") == (0, Fraction(2, 3))
    assert parse_interval("pi/3..pi") == (Fraction(1, 3), 1)
    for bad in ("0..1.5", "pi..0", "zero"):
        with pytest.raises(UsageError):
            parse_interval(bad)


def test_p_diff_sweep_csv(capsysbinary):
    code, out, _ = invoke(capsysbinary, "certify", "--family", "P_DIFF", "--n", "1..30",
                          "--interval", "0..2pi/3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.decode())))
    assert len(rows) == 30 and all(r["verdict"] == "proved" for r in rows)
    six = next(r for r in rows if r["n"] == "6")
    assert six["closed_root_count"] == "1" and six["endpoint_roots"] == "t=-1/2"
    assert six["root_count"] == "0"
    assert b"\r\n" in out


def test_usage_errors_exit_two(capsysbinary, tmp_path):
    code, _, err = invoke(capsysbinary, "certify", "--family", "A11", "--m", "0", "--n", "3")
    assert code == 2 and "m must be ≥ 1" in err
    code, _, err = invoke(capsysbinary, "certify", "--family", "ZZZ", "--n", "3")
    assert code == 2 and "unknown family tag" in err
    code, _, err = invoke(capsysbinary, "certify", "--family", "B12", "--n", "3..1")
    assert code == 2 and "malformed range" in err
    code, _, err = invoke(capsysbinary, "certify", "--family", "B12", "--n", "2",
                          "--output", str(tmp_path / "missing" / "r.json"))
    assert code == 2 and "cannot write" in err
    code, _, err = invoke(capsysbinary, "sharpness", "--claim", "TH5_2_9", "--depth", "3")
    assert code == 2 and "depth must be ≥ 8" in err
    code, _, _ = invoke(capsysbinary, "certify")
    assert code == 2


def test_failing_check_exits_one(capsysbinary):
    code, out, _ = invoke(capsysbinary, "certify", "--family", "B12", "--m", "1", "--n", "2", "--bound", "2")
    report = json.loads(out)
    assert code == 1
    assert report["summary"] == {"total": 1, "passed": 0, "failed": 1, "verdicts": {"refuted": 1}}


def test_reports_match_schema(capsysbinary):
    for argv in (["certify", "--family", "U14", "--m", "1..2", "--n", "1..3"],
                 ["lemmas", "--n", "21"],
                 ["sharpness", "--claim", "TH5_2_9"],
                 ["series", "--m", "2", "--omega=-1,1/2", "--order", "16", "--samples", "100"]):
        code, out, _ = invoke(capsysbinary, *argv)
        assert code == 0, argv
        jsonschema.validate(json.loads(out), SCHEMA)


def test_json_is_sorted_and_exact(capsysbinary):
    _, out, _ = invoke(capsysbinary, "certify", "--family", "U14", "--m", "1", "--n", "2")
    text = out.decode()
    data = json.loads(text)
    assert text == json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    assert data["results"][0]["bound"] == {"num": "-1", "den": "4"}


def test_round_trip(capsysbinary):
    _, out, _ = invoke(capsysbinary, "lemmas", "--n", "22")
    env = ReportEnvelope.from_json(out.decode())
    assert env.to_json().encode() == out
    assert emit(env, "json") == out


def test_empty_envelope():
    env = ReportEnvelope("1", "0.1.0", {"command": "certify", "precision_bits": 128, "grid_points": 2048,
                                        "format": "json"}, [], {"total": 0, "passed": 0, "failed": 0, "verdicts": {}})
    jsonschema.validate(json.loads(emit(env)), SCHEMA)
    assert emit(env, "csv").decode().startswith("kind,id,m,n,check")


def test_determinism_across_jobs():
    cfg = dict(command="certify", family="D17", m_range=[1, 2, 3], n_range=list(range(1, 8)))
    one, _ = run(RunConfig(**cfg, jobs=1))
    many, _ = run(RunConfig(**cfg, jobs=3))
    assert emit(one) == emit(many)
    assert emit(one, "csv") == emit(many, "csv")


def test_byte_identical_reruns(tmp_path):
    argv = [sys.executable, "-m", "trigineq", "certify", "--family", "THETA_DIFF", "--n", "1..6"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_precision_env_var(capsysbinary, monkeypatch):
    monkeypatch.setenv("TRIGINEQ_PRECISION_BITS", "200")
    _, out, _ = invoke(capsysbinary, "certify", "--family", "B12", "--n", "1")
    assert json.loads(out)["config"]["precision_bits"] == 200
    code, _, err = invoke(capsysbinary, "certify", "--family", "B12", "--n", "1", "--precision-bits", "32")
    assert code == 2 and "precision bits" in err


def test_series_csv_table(capsysbinary, tmp_path):
    target = tmp_path / "w.csv"
    code, out, _ = invoke(capsysbinary, "series", "--m", "1", "--omega", "1", "--order", "10",
                          "--format", "csv", "--output", str(target))
    assert code == 0 and out == b""
    rows = list(csv.reader(io.StringIO(target.read_text())))
    assert rows[0] == ["m", "omega", "order", "numerator", "denominator"]
    assert rows[1:4] == [["1", "1", "0", "0", "1"], ["1", "1", "1", "2", "1"], ["1", "1", "2", "5", "1"]]


def test_scan_command_is_grid_only(capsysbinary):
    code, out, _ = invoke(capsysbinary, "scan", "--family", "V15", "--m", "2", "--n", "4")
    r = json.loads(out)["results"][0]
    assert code == 0 and r["method"] == "grid" and r["verdict"] == "numeric_only"
