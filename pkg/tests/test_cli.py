import json

import pytest

import app


@pytest.fixture
def cache_path(tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    monkeypatch.setenv("EXPONENT_LAB_CACHE", str(path))
    return path


def run(capsys, *argv):
    code = app.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize(
    "n, literal, expected",
    [("5", "0,1,2", "2"), ("6", "0,2,4", "not primitive"), ("9", "0,1,3", "4")],
)
def test_exponent_command(capsys, n, literal, expected):
    code, out, _ = run(capsys, "exponent", "--n", n, "--set", literal)
    assert code == 0
    assert out.strip() == expected


def test_exponent_parse_error_exits_2(capsys):
    code, _, err = run(capsys, "exponent", "--n", "5", "--set", "0,x")
    assert code == 2
    assert "malformed set literal" in err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        app.main(["exponent", "--n", "5"])
    assert excinfo.value.code == 2


def test_exponent_set_exhaustive_writes_cache(capsys, cache_path):
    code, out, _ = run(capsys, "exponent-set", "--n", "17", "--mode", "exhaustive", "--threads", "1")
    assert code == 0
    assert out.splitlines()[0] == "1 2 3 4 5 6 8 16"
    lines = cache_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 8
    assert all(json.loads(line)["n"] == 17 for line in lines)


def test_exponent_set_search_with_zero_budget(capsys, cache_path):
    code, out, _ = run(capsys, "exponent-set", "--n", "5", "--mode", "search", "--budget", "0", "--threads", "1")
    assert code == 0
    assert out.splitlines()[0] == "1 2 4"


def test_exponent_set_csv(capsys, cache_path):
    code, out, _ = run(
        capsys, "exponent-set", "--n", "5", "--mode", "search", "--budget", "0",
        "--threads", "1", "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "n,exponent,witness,method"


def test_exponent_set_above_cap_exits_2(capsys, cache_path):
    code, _, _ = run(capsys, "exponent-set", "--n", "40", "--mode", "exhaustive")
    assert code == 2


def test_verify_table_exhaustive(capsys, cache_path):
    code, out, _ = run(capsys, "verify-table", "--min", "5", "--max", "9", "--mode", "exhaustive", "--threads", "1")
    assert code == 0
    assert out.splitlines()[0] == "n=5: pass"


def test_verify_table_json_meta(capsys, cache_path):
    code, out, _ = run(
        capsys, "verify-table", "--min", "5", "--max", "6", "--mode", "search",
        "--budget", "0", "--threads", "1", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["meta"]["budget"] == 0
    assert [row["status"] for row in data["rows"]] == ["pass", "pass"]


def test_verify_table_out_of_range_exits_2(capsys, cache_path):
    code, _, _ = run(capsys, "verify-table", "--min", "2", "--max", "6")
    assert code == 2


def test_verify_theorems_small_ranges(capsys, cache_path):
    code, out, _ = run(
        capsys, "verify-theorems", "--constructions-max", "40", "--lemma6-max", "20",
        "--lemma7-max", "40", "--exact-max", "12", "--threads", "1",
    )
    assert code == 0
    assert "constructions: pass" in out
    assert "lemma7: pass" in out


def test_conjecture_scan_always_exits_0(capsys, cache_path):
    code, out, _ = run(capsys, "conjecture-scan", "--k", "1", "--n", "20", "--budget", "0", "--threads", "1")
    assert code == 0
    assert "  19: witnessed {0, 1}" in out.splitlines()


def test_conjecture_scan_needs_range(capsys, cache_path):
    code, _, _ = run(capsys, "conjecture-scan", "--k", "1")
    assert code == 2


def test_cache_command_reports_rejects(capsys, tmp_path):
    path = tmp_path / "cache.jsonl"
    path.write_text(
        json.dumps({"n": 5, "exponent": 4, "witness": [0, 1], "method": "construction", "seed": None})
        + "\nnot json\n",
        encoding="utf-8",
    )
    code, out, _ = run(capsys, "cache", "--cache", str(path))
    assert code == 1
    assert "1 witnesses, 1 rejected lines" in out


def test_cache_command_survives_invalid_utf8(capsys, tmp_path):
    path = tmp_path / "cache.jsonl"
    good = json.dumps({"n": 5, "exponent": 4, "witness": [0, 1], "method": "construction", "seed": None})
    path.write_bytes(good.encode("utf-8") + b"\n\xff\xfe garbage\n")
    code, out, _ = run(capsys, "cache", "--cache", str(path))
    assert code == 1
    assert "1 witnesses, 1 rejected lines" in out
