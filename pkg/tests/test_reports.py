from core.exponent_engine import exponent
from core.residue_core import make_set
from core.theory import verify_gaps
from pipelines import reports
from pipelines.enumerator import enumerate_exact, search_exponent_set
from pipelines.theory_checks import CheckResult, conjecture_scan
from pipelines.verify_table import MODE_SEARCH, ROW_ERRATUM, RowVerdict


def test_exponent_text():
    assert reports.render_exponent(exponent(5, make_set(5, [0, 1, 2]))) == "2\n"
    assert reports.render_exponent(exponent(6, make_set(6, [0, 2, 4]))) == "not primitive\n"


def test_exponent_set_text_leads_with_exponents():
    result = enumerate_exact(17)
    text = reports.render_exponent_set(result, "text", verify_gaps(17, result))
    lines = text.splitlines()
    assert lines[0] == "1 2 3 4 5 6 8 16"
    assert "exhaustive: yes" in lines
    assert "  16: {0, 1} [exhaustive]" in lines
    assert "  [9, 15] cor4-upper" in lines


def test_exponent_set_csv_layout_and_round_trip():
    result = search_exponent_set(5, 0)
    text = reports.render_exponent_set(result, "csv")
    assert text.splitlines()[0] == "n,exponent,witness,method"
    assert "5,4,0-1,construction" in text.splitlines()
    assert reports.render_csv(reports.parse_csv(text)) == text


def test_exponent_set_json_round_trip():
    result = enumerate_exact(11)
    text = reports.render_exponent_set(result, "json", verify_gaps(11, result))
    data = reports.parse_json(text)
    assert data["exponents"] == result.exponents
    assert data["exhaustive"] is True
    assert list(data["witnesses"][0]) == ["n", "exponent", "witness", "method", "seed"]
    assert reports.render_json(data) == text


def test_scan_renderings():
    report = conjecture_scan(1, 20, 20, budget=0)
    text = reports.render_scan(report)
    assert "  19: witnessed {0, 1}" in text.splitlines()
    assert "  12: certified-absent" in text.splitlines()
    csv_text = reports.render_scan(report, "csv")
    assert "20,19,witnessed,0-1" in csv_text.splitlines()
    assert reports.render_csv(reports.parse_csv(csv_text)) == csv_text
    json_text = reports.render_scan(report, "json")
    assert reports.render_json(reports.parse_json(json_text)) == json_text


def test_checks_rendering():
    checks = [CheckResult("constructions", 10), CheckResult("lemma7", 3, ["n=30: covering fails for t=[5]"])]
    text = reports.render_checks(checks)
    assert "constructions: pass (10 checked, 0 failures)" in text
    assert "lemma7: FAIL (3 checked, 1 failures)" in text
    data = reports.parse_json(reports.render_checks(checks, "json", {"seed": 1}))
    assert data["meta"] == {"seed": 1}
    assert [c["passed"] for c in data["checks"]] == [True, False]


def test_table_verdict_text_marks_errata():
    verdict = RowVerdict(
        54, MODE_SEARCH, ROW_ERRATUM,
        absences=[(16, "certified (thm9)")],
        errata=[(17, "{0, 1, 18, 19}")],
    )
    text = reports.render_table_verdicts([verdict])
    assert text.splitlines() == [
        "n=54: erratum",
        "    table erratum: 17 witnessed by {0, 1, 18, 19}",
    ]
    frame = reports.parse_csv(reports.render_table_verdicts([verdict], "csv"))
    assert frame.loc[0, "errata"] == "17"
