"""
table1.py

Loader for the published exponent-set table (data/table1.csv) and its
errata (data/table1_errata.csv).

The table file is the single source of truth for table verification; it is
validated on load and any violation raises DatasetError. Each erratum names
an exponent the table omits together with a witness set, and is re-verified
on load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import pandas as pd

from core.config import TABLE1_ERRATA_PATH, TABLE1_MAX_N, TABLE1_MIN_N, TABLE1_PATH
from core.errors import DatasetError, DomainError
from core.exponent_engine import exponent
from core.residue_core import GeneratorSpec

REQUIRED_COLUMNS = ["n", "exponents"]
ERRATA_COLUMNS = ["n", "exponent", "witness"]

EXPECTED_ROWS = {
    5: (1, 2, 4),
    64: tuple(range(1, 19)) + (22, 31, 32, 63),
}


def parse_exponent_list(text: str) -> List[int]:
    """
    Expand `1..6 8 16` into [1, 2, 3, 4, 5, 6, 8, 16].
    """
    out: List[int] = []
    for token in str(text).split():
        if ".." in token:
            lo, hi = token.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(token))
    return out


@dataclass(frozen=True)
class TableErratum:
    n: int
    exponent: int
    witness: GeneratorSpec


@dataclass(frozen=True)
class Table1Dataset:
    rows: Dict[int, Tuple[int, ...]]
    errata: Dict[int, Tuple[TableErratum, ...]] = field(default_factory=dict)

    def row(self, n: int) -> Tuple[int, ...]:
        """Published row, as printed."""
        if n not in self.rows:
            raise DatasetError(f"table has no row for n={n}")
        return self.rows[n]

    def erratum_values(self, n: int) -> Tuple[int, ...]:
        return tuple(sorted(x.exponent for x in self.errata.get(n, ())))

    def corrected_row(self, n: int) -> Tuple[int, ...]:
        return tuple(sorted(set(self.row(n)) | set(self.erratum_values(n))))

    def absences(self, n: int) -> List[int]:
        present = set(self.corrected_row(n))
        return [e for e in range(1, n) if e not in present]

    def moduli(self) -> List[int]:
        return sorted(self.rows)


def validate_table(rows: Dict[int, Tuple[int, ...]]) -> None:
    expected_n = list(range(TABLE1_MIN_N, TABLE1_MAX_N + 1))
    if sorted(rows) != expected_n:
        raise DatasetError(
            f"table must have one row per n in [{TABLE1_MIN_N}, {TABLE1_MAX_N}], "
            f"got {len(rows)} rows"
        )
    for n, exps in rows.items():
        if any(e < 1 or e > n - 1 for e in exps):
            raise DatasetError(f"row {n}: exponent outside [1, {n - 1}]: {exps}")
        if list(exps) != sorted(set(exps)):
            raise DatasetError(f"row {n}: exponents not sorted and distinct: {exps}")
    for n, exps in EXPECTED_ROWS.items():
        if rows[n] != exps:
            raise DatasetError(f"row {n} does not match the published table: {rows[n]}")


def load_errata(path: str, rows: Dict[int, Tuple[int, ...]]) -> Dict[int, Tuple[TableErratum, ...]]:
    """
    Read and re-verify the errata file against the loaded rows.

    Every erratum must name a row, an exponent missing from that row, and a
    witness whose exponent is exactly that value.
    """
    try:
        df = pd.read_csv(path, dtype=str, keep_default_na=False)
    except (OSError, ValueError) as exc:
        raise DatasetError(f"cannot read errata file {path}: {exc}") from exc

    missing = [col for col in ERRATA_COLUMNS if col not in df.columns]
    if missing:
        raise DatasetError(f"missing required columns in {path}: {missing}")

    out: Dict[int, List[TableErratum]] = {}
    for n_text, e_text, witness_text in zip(df["n"], df["exponent"], df["witness"]):
        try:
            n, e = int(n_text), int(e_text)
            elements = tuple(int(x) for x in witness_text.split())
            spec = GeneratorSpec(n, elements)
        except (ValueError, DomainError) as exc:
            raise DatasetError(f"malformed erratum {n_text},{e_text},{witness_text!r}: {exc}") from exc
        if n not in rows:
            raise DatasetError(f"erratum for n={n} has no table row")
        if e in rows[n]:
            raise DatasetError(f"erratum {e} for n={n} is already in the table")
        if any(x.exponent == e for x in out.get(n, [])):
            raise DatasetError(f"duplicate erratum {e} for n={n}")
        found = exponent(n, spec.to_set()).exponent
        if found != e:
            raise DatasetError(f"erratum witness {spec} mod {n} has exponent {found}, not {e}")
        out.setdefault(n, []).append(TableErratum(n, e, spec))
    return {n: tuple(items) for n, items in out.items()}


def load_table1(path: str = TABLE1_PATH, errata_path: str = TABLE1_ERRATA_PATH) -> Table1Dataset:
    try:
        df = pd.read_csv(path, dtype={"n": int, "exponents": str})
    except (OSError, ValueError) as exc:
        raise DatasetError(f"cannot read table file {path}: {exc}") from exc

    missing = [col for col in REQUIRED_COLUMNS if col not in df.columns]
    if missing:
        raise DatasetError(f"missing required columns in {path}: {missing}")
    if df["n"].duplicated().any():
        raise DatasetError(f"duplicate rows in {path}: {df.loc[df['n'].duplicated(), 'n'].tolist()}")

    try:
        rows = {
            int(n): tuple(parse_exponent_list(text))
            for n, text in zip(df["n"], df["exponents"])
        }
    except ValueError as exc:
        raise DatasetError(f"malformed exponent list in {path}: {exc}") from exc

    validate_table(rows)
    return Table1Dataset(rows, load_errata(errata_path, rows))
