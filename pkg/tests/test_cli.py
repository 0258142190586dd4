import json

import pytest

from sphersub.cli import main
from sphersub.report import canonical_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_fail(capsys):
    code, out, _ = run(capsys, "check", "Sp(8)", "Sp(4)xSp(2)")
    assert code == 1
    assert "dim H = 13" in out and "dim G/B = 16" in out
    assert "FAIL (13 < 16)" in out


def test_check_pass(capsys):
    code, out, _ = run(capsys, "check", "SO(8)", "G2")
    assert code == 0 and "PASS (14 >= 12)" in out
    code, out, _ = run(capsys, "check", "SL(2)", "SL(2)")
    assert code == 0


def test_check_parse_error(capsys):
    code, _, err = run(capsys, "check", "Sp(7)", "G2")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "check", "SO(4)y", "G2")
    assert code == 2 and "position 5" in err


def test_classify_exit_codes(capsys):
    code, out, _ = run(capsys, "classify", "Sp(8)", "G2xSp(2)", "--p", "2")
    assert code == 0 and "Spherical" in out and "t1.21R" in out
    code, out, _ = run(capsys, "classify", "E6", "C4")
    assert code == 0
    code, out, _ = run(capsys, "classify", "Sp(8)", "G2xSp(2)", "--p", "3")
    assert code == 1 and "NotListed" in out
    code, out, _ = run(capsys, "classify", "G2xSp(2)", "G2")
    assert code == 3 and "OutOfScope" in out
    code, _, err = run(capsys, "classify", "Sp(8)", "G2xSp(2)", "--p", "4")
    assert code == 2


def test_audit_suites_exit_zero(capsys):
    for suite in ("eq4", "grid", "tensor", "sosp2", "spin7", "g2", "tables"):
        code, out, _ = run(capsys, "audit", "--suite", suite)
        assert code == 0, suite
        assert "PASS" in out


def test_audit_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["audit", "--suite", "nope"])
    assert exc.value.code == 2


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "Sp(8)", "G2", "--bogus"])
    assert exc.value.code == 2


def test_table_gating(capsys):
    _, all_rows, _ = run(capsys, "table", "--which", "classical")
    _, p0_rows, _ = run(capsys, "table", "--which", "classical", "--p", "0")
    _, p2_rows, _ = run(capsys, "table", "--which", "classical", "--p", "2")
    assert "t1.21R" in all_rows and "t1.21R" not in p0_rows and "t1.21R" in p2_rows
    assert all("R |" not in line for line in p0_rows.splitlines())

    _, exc3, _ = run(capsys, "table", "--which", "exceptional", "--p", "3")
    assert "At2 < G2" in exc3
    _, exc0, _ = run(capsys, "table", "--which", "exceptional", "--p", "0")
    assert "At2" not in exc0

    _, nongcr, _ = run(capsys, "table", "--which", "non-gcr")
    assert "standard" in nongcr and "dual" in nongcr and "H1gen=k" in nongcr

    code, _, _ = run(capsys, "table", "--which", "maximal-gcr", "--p", "2")
    assert code == 0


def test_filter(capsys):
    code, out, _ = run(capsys, "filter", "B3")
    assert code == 0
    assert "w1 (orbit 6)" in out and "w3 (orbit 8)" in out
    code, _, err = run(capsys, "filter", "Q9")
    assert code == 2


def test_output_determinism(capsys):
    runs = []
    for _ in range(2):
        _, out, _ = run(capsys, "audit", "--suite", "g2", "--format", "jsonl")
        runs.append(out)
    assert runs[0] == runs[1]
    for _ in range(2):
        _, out, _ = run(capsys, "table", "--which", "classical", "--format", "jsonl")
        runs.append(out)
    assert runs[2] == runs[3]


def test_jsonl_round_trips(capsys):
    for argv in (
        ["audit", "--suite", "tensor", "--format", "jsonl"],
        ["classify", "Sp(8)", "G2xSp(2)", "--p", "2", "--format", "jsonl"],
        ["check", "Sp(8)", "Sp(4)xSp(2)", "--format", "jsonl"],
        ["table", "--which", "exceptional", "--format", "jsonl"],
        ["filter", "B3", "--format", "jsonl"],
    ):
        main(argv)
        out = capsys.readouterr().out
        rebuilt = []
        for line in out.splitlines():
            record = json.loads(line)
            assert record["v"] == 1
            rebuilt.append(canonical_json(record))
        assert "\n".join(rebuilt) + "\n" == out
