"""
reports.py

Text, JSON and CSV rendering for every command.

JSON is dumped with a fixed indent and the field order built here, and CSV
goes through pandas with a fixed line terminator, so parsing an emitted
file and rendering it again reproduces it byte for byte.
"""

from __future__ import annotations

import io
import json
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

from core.exponent_engine import ExponentResult
from core.results import ExponentSetResult, WitnessRecord
from core.theory import GapReport

EXPONENT_SET_COLUMNS = ["n", "exponent", "witness", "method"]
SCAN_COLUMNS = ["n", "exponent", "status", "witness"]
TABLE_COLUMNS = ["n", "mode", "status", "missing", "unexpected", "errata"]


# =========================
# Generic helpers
# =========================


def render_json(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def parse_json(text: str) -> Any:
    return json.loads(text)


def render_csv(df: pd.DataFrame) -> str:
    return df.to_csv(index=False, lineterminator="\n")


def parse_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False)


def witness_token(record: Optional[WitnessRecord]) -> str:
    """
    Witness residues joined with '-', e.g. `0-1-3`.
    """
    if record is None:
        return ""
    return "-".join(str(x) for x in record.witness.elements)


def _spaced(values: Iterable[int]) -> str:
    return " ".join(str(v) for v in values)


# =========================
# Single exponent
# =========================


def exponent_to_dict(result: ExponentResult) -> Dict[str, Any]:
    return {
        "n": result.modulus,
        "set": list(result.set.elements),
        "exponent": result.exponent,
        "primitive": result.primitive,
        "iterations_used": result.iterations_used,
    }


def render_exponent(result: ExponentResult, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(exponent_to_dict(result))
    if fmt == "csv":
        row = exponent_to_dict(result)
        row["set"] = "-".join(str(x) for x in row["set"])
        return render_csv(pd.DataFrame([row]))
    if not result.primitive:
        return "not primitive\n"
    return f"{result.exponent}\n"


# =========================
# Exponent sets
# =========================


def exponent_set_frame(result: ExponentSetResult) -> pd.DataFrame:
    rows = [
        {
            "n": result.modulus,
            "exponent": e,
            "witness": witness_token(result.witnesses[e]),
            "method": result.witnesses[e].method,
        }
        for e in result.exponents
    ]
    return pd.DataFrame(rows, columns=EXPONENT_SET_COLUMNS)


def exponent_set_to_dict(result: ExponentSetResult, gaps: Optional[GapReport] = None) -> Dict[str, Any]:
    out = {
        "n": result.modulus,
        "exponents": list(result.exponents),
        "exhaustive": result.exhaustive,
        "density": round(result.density(), 6),
        "budget_spent": dict(sorted(result.budget_spent.items())),
        "witnesses": [result.witnesses[e].to_dict() for e in result.exponents],
    }
    if gaps is not None:
        out["gaps"] = gaps.to_dict()
    return out


def render_exponent_set(
    result: ExponentSetResult, fmt: str = "text", gaps: Optional[GapReport] = None
) -> str:
    if fmt == "json":
        return render_json(exponent_set_to_dict(result, gaps))
    if fmt == "csv":
        return render_csv(exponent_set_frame(result))

    lines = [
        _spaced(result.exponents),
        f"exhaustive: {'yes' if result.exhaustive else 'no'}",
        f"|E_n|/n: {result.density():.3f}",
        "witnesses:",
    ]
    for e in result.exponents:
        record = result.witnesses[e]
        lines.append(f"  {e}: {record.witness} [{record.method}]")
    if gaps is not None:
        lines.append(render_gap_report(gaps).rstrip("\n"))
    return "\n".join(lines) + "\n"


# =========================
# Gap reports
# =========================


def render_gap_report(report: GapReport, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(report.to_dict())
    lines = [f"gaps for n={report.n}:"]
    for lo, hi, tag in report.certified:
        lines.append(f"  [{lo}, {hi}] {tag}")
    absences = _spaced(report.uncertified_absences) or "none"
    kind = "definitive" if report.definitive else "budget-limited"
    lines.append(f"  uncertified absences ({kind}): {absences}")
    lines.append(f"  consistent: {'yes' if report.consistent else 'NO'}")
    return "\n".join(lines) + "\n"


# =========================
# Conjecture scan
# =========================


def scan_frame(report) -> pd.DataFrame:
    rows = []
    for row in report.rows:
        for e in sorted(row.statuses):
            rows.append(
                {
                    "n": row.n,
                    "exponent": e,
                    "status": row.statuses[e],
                    "witness": witness_token(row.witnesses.get(e)),
                }
            )
    return pd.DataFrame(rows, columns=SCAN_COLUMNS)


def render_scan(report, fmt: str = "text") -> str:
    if fmt == "csv":
        return render_csv(scan_frame(report))
    if fmt == "json":
        return render_json(
            {
                "k": report.k,
                "rows": [
                    {
                        "n": row.n,
                        "range": [row.lo, row.hi],
                        "budget_spent": row.budget_spent,
                        "statuses": {str(e): s for e, s in sorted(row.statuses.items())},
                    }
                    for row in report.rows
                ],
            }
        )
    lines = [f"k={report.k}"]
    for row in report.rows:
        lines.append(f"n={row.n} (examined {row.lo}..{row.hi}, {row.budget_spent} random trials)")
        for e in sorted(row.statuses):
            witness = row.witnesses.get(e)
            suffix = f" {witness.witness}" if witness is not None else ""
            lines.append(f"  {e}: {row.statuses[e]}{suffix}")
    return "\n".join(lines) + "\n"


# =========================
# Verification runs
# =========================


def render_table_verdicts(verdicts: List, fmt: str = "text", meta: Optional[Dict[str, Any]] = None) -> str:
    if fmt == "json":
        return render_json({"meta": meta or {}, "rows": [v.to_dict() for v in verdicts]})
    if fmt == "csv":
        frame = pd.DataFrame(
            [
                {
                    "n": v.n,
                    "mode": v.mode,
                    "status": v.status,
                    "missing": _spaced(v.missing),
                    "unexpected": _spaced(v.unexpected),
                    "errata": _spaced(e for e, _ in v.errata),
                }
                for v in verdicts
            ],
            columns=TABLE_COLUMNS,
        )
        return render_csv(frame)

    lines = []
    for v in verdicts:
        line = f"n={v.n}: {v.status}"
        if v.missing:
            line += f" missing {_spaced(v.missing)}"
        if v.unexpected:
            line += f" unexpected {_spaced(v.unexpected)}"
        lines.append(line)
        for e, witness in v.errata:
            lines.append(f"    table erratum: {e} witnessed by {witness}")
        for e, label in v.absences:
            if not label.startswith("certified"):
                lines.append(f"    absent {e}: {label}")
    return "\n".join(lines) + "\n"


def render_checks(checks: List, fmt: str = "text", meta: Optional[Dict[str, Any]] = None) -> str:
    if fmt == "json":
        return render_json({"meta": meta or {}, "checks": [c.to_dict() for c in checks]})
    if fmt == "csv":
        frame = pd.DataFrame(
            [{"check": c.name, "passed": c.passed, "checked": c.checked, "failures": len(c.failures)} for c in checks],
            columns=["check", "passed", "checked", "failures"],
        )
        return render_csv(frame)
    lines = []
    for c in checks:
        lines.append(f"{c.name}: {'pass' if c.passed else 'FAIL'} ({c.checked} checked, {len(c.failures)} failures)")
        lines.extend(f"    {f}" for f in c.failures[:20])
    return "\n".join(lines) + "\n"
