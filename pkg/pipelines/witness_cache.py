"""
witness_cache.py

Append-only JSON Lines store of verified witnesses.

One record per line with exactly the fields
`n`, `exponent`, `witness`, `method`, `seed`. Every line is re-verified on
load; lines that fail to parse or verify are rejected with a warning.
"""

from __future__ import annotations

import json
import logging
import os
from typing import Dict, Iterable, List, Optional, Tuple

from core.errors import CacheError, DomainError, EngineError
from core.results import WitnessRecord

log = logging.getLogger(__name__)


class WitnessCache:
    def __init__(self, path: Optional[str]) -> None:
        self.path = path
        self.records: Dict[Tuple[int, int], WitnessRecord] = {}
        self.rejected: List[int] = []

    # -----------------------------
    # Loading
    # -----------------------------

    @classmethod
    def load(cls, path: Optional[str]) -> "WitnessCache":
        """
        Read and re-verify `path`; a missing file is an empty cache.
        """
        cache = cls(path)
        if path is None or not os.path.exists(path):
            return cache
        try:
            with open(path, "rb") as handle:
                lines = handle.readlines()
        except OSError as exc:
            raise CacheError(f"cannot read witness cache {path}: {exc}") from exc

        # decoded per line: a bad byte rejects only its own line
        for lineno, raw in enumerate(lines, start=1):
            if not raw.strip():
                continue
            try:
                record = WitnessRecord.from_dict(json.loads(raw.decode("utf-8")))
            except (UnicodeDecodeError, json.JSONDecodeError, DomainError, TypeError, KeyError) as exc:
                log.warning("rejecting cache line %d of %s: %s", lineno, path, exc)
                cache.rejected.append(lineno)
                continue
            if not record.verify():
                log.warning(
                    "rejecting cache line %d of %s: witness %s does not have exponent %d mod %d",
                    lineno, path, record.witness, record.exponent, record.n,
                )
                cache.rejected.append(lineno)
                continue
            cache.records.setdefault((record.n, record.exponent), record)

        log.info(
            "loaded %d witnesses from %s (%d rejected)",
            len(cache.records), path, len(cache.rejected),
        )
        return cache

    # -----------------------------
    # Lookup
    # -----------------------------

    def get(self, n: int, exponent: int) -> Optional[WitnessRecord]:
        return self.records.get((n, exponent))

    def for_modulus(self, n: int) -> List[WitnessRecord]:
        return [r for (m, _), r in sorted(self.records.items()) if m == n]

    def moduli(self) -> List[int]:
        return sorted({n for n, _ in self.records})

    def __len__(self) -> int:
        return len(self.records)

    # -----------------------------
    # Appending
    # -----------------------------

    def add(self, record: WitnessRecord) -> bool:
        """
        Append `record` unless (n, exponent) is already cached.
        """
        key = (record.n, record.exponent)
        if key in self.records:
            return False
        if not record.verify():
            raise EngineError(
                f"refusing to cache unverified witness {record.witness} for exponent "
                f"{record.exponent} mod {record.n}"
            )
        self.records[key] = record
        if self.path is not None:
            self._append([record])
        return True

    def extend(self, records: Iterable[WitnessRecord]) -> int:
        return sum(1 for record in records if self.add(record))

    def _append(self, records: List[WitnessRecord]) -> None:
        folder = os.path.dirname(self.path)
        try:
            if folder:
                os.makedirs(folder, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as handle:
                for record in records:
                    handle.write(json.dumps(record.to_dict()) + "\n")
        except OSError as exc:
            raise CacheError(f"cannot write witness cache {self.path}: {exc}") from exc
