"""
theory_checks.py

Sweeps that check the known results over ranges of n, and the
exploratory scan around the conjectured further gaps.

- check_constructions: closed-form families hit their predicted exponents
- check_lemma6: every k passing the division criterion gets a witness
- check_lemma7 / check_system4_equivalence: covering system vs BFS
- check_sqrt, check_gap_consistency, check_wang_meng: on exact E_n
- conjecture_scan: witnessed / certified-absent / undecided per exponent
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
from joblib import Parallel, delayed

from core.config import DEFAULT_EXHAUSTIVE_CAP, DEFAULT_SEED
from core.exponent_engine import diameter, exponent
from core.residue_core import make_set
from core.results import ExponentSetResult, WitnessRecord
from core.theory import (
    LEMMA7_MIN_N,
    gap_intervals,
    known_constructions,
    lemma6_predicate,
    lemma6_witness,
    lemma7_failures,
    sqrt_range_check,
    system4_solvable,
    verify_gaps,
    wang_meng_consistent,
)
from pipelines.enumerator import cached_exact, enumerate_exact, search_exponent_set

log = logging.getLogger(__name__)

STATUS_WITNESSED = "witnessed"
STATUS_CERTIFIED = "certified-absent"
STATUS_UNDECIDED = "undecided"


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
        }


def exact_sets(n_lo: int, n_hi: int, cap: int = DEFAULT_EXHAUSTIVE_CAP, threads: int = 1) -> Dict[int, ExponentSetResult]:
    """
    Exact E_n for every n in [n_lo, n_hi], one worker per n.
    """
    ns = list(range(n_lo, n_hi + 1))
    results = Parallel(n_jobs=threads)(delayed(enumerate_exact)(n, cap) for n in ns)
    return dict(zip(ns, results))


# =========================
# Constructions & Lemma 6
# =========================


def check_constructions(n_lo: int = 4, n_hi: int = 500) -> CheckResult:
    check = CheckResult("constructions")
    for n in range(n_lo, n_hi + 1):
        for spec, predicted in known_constructions(n):
            check.checked += 1
            got = exponent(n, spec.to_set()).exponent
            if got != predicted:
                check.failures.append(f"n={n} S={spec}: exponent {got}, predicted {predicted}")
    return check


def lemma6_values(n: int) -> List[int]:
    return [k for k in range(3, n // 3 + 1) if lemma6_predicate(n, k)]


def check_lemma6(
    n_max: int = 100,
    budget: int = 10 ** 5,
    seed: int = DEFAULT_SEED,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    threads: int = 1,
) -> CheckResult:
    """
    Every k with the division criterion true receives a witness, n <= n_max.

    The interval witness settles most k directly; the rest go to the exact
    scan (n <= cap) or to search.
    """
    check = CheckResult("lemma6")
    for n in range(9, n_max + 1):
        ks = lemma6_values(n)
        open_ks = []
        for k in ks:
            spec = lemma6_witness(n, k)
            if spec is None or exponent(n, spec.to_set()).exponent != k:
                open_ks.append(k)
        check.checked += len(ks) - len(open_ks)
        if not open_ks:
            continue
        if n <= cap:
            result = cached_exact(n, cap)
        else:
            result = search_exponent_set(n, budget, seed, threads, targets=open_ks)
        for k in open_ks:
            check.checked += 1
            if k not in result:
                check.failures.append(f"n={n}: no witness for k={k}")
    return check


# =========================
# Covering lemma
# =========================


def check_lemma7(n_lo: int = LEMMA7_MIN_N, n_hi: int = 300, threads: int = 1) -> CheckResult:
    check = CheckResult("lemma7")
    ns = list(range(max(n_lo, LEMMA7_MIN_N), n_hi + 1))
    failures = Parallel(n_jobs=threads)(delayed(lemma7_failures)(n) for n in ns)
    for n, bad in zip(ns, failures):
        check.checked += 1
        if bad:
            check.failures.append(f"n={n}: covering fails for t={bad}")
    return check


def check_system4_equivalence(trials: int = 10 ** 4, n_max: int = 300, seed: int = DEFAULT_SEED) -> CheckResult:
    """
    system4_solvable(n, t, k) agrees with diameter(n, {0,1,t}) <= k on random triples.
    """
    check = CheckResult("system4-diameter")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = int(rng.integers(3, n_max + 1))
        t = int(rng.integers(1, n))
        k = int(rng.integers(0, n))
        check.checked += 1
        diam = diameter(n, make_set(n, [0, 1, t])).diameter
        if system4_solvable(n, t, k) != (diam <= k):
            check.failures.append(f"n={n} t={t} k={k}: diameter {diam}")
    return check


# =========================
# Exact-set checks
# =========================


def check_sqrt(sets: Dict[int, ExponentSetResult]) -> CheckResult:
    check = CheckResult("sqrt-range")
    for n, result in sorted(sets.items()):
        check.checked += 1
        if not sqrt_range_check(n, result):
            missing = [k for k in range(1, isqrt(n) + 1) if k not in result]
            check.failures.append(f"n={n}: missing {missing}")
    return check


def check_gap_consistency(sets: Dict[int, ExponentSetResult]) -> CheckResult:
    check = CheckResult("gap-consistency")
    for n, result in sorted(sets.items()):
        if n < 5:
            continue
        check.checked += 1
        report = verify_gaps(n, result)
        if not report.consistent:
            hits = [e for e in result.exponents if report.certificate_for(e)]
            check.failures.append(f"n={n}: exponents {hits} inside certified gaps")
    return check


def check_wang_meng(sets: Dict[int, ExponentSetResult]) -> CheckResult:
    check = CheckResult("wang-meng")
    for n, result in sorted(sets.items()):
        check.checked += 1
        if not wang_meng_consistent(n, result.exponents):
            check.failures.append(f"n={n}: exponents {result.exponents}")
    return check


def run_theorem_checks(
    constructions_max: int = 500,
    lemma6_max: int = 100,
    lemma7_max: int = 300,
    exact_max: int = DEFAULT_EXHAUSTIVE_CAP,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    budget: int = 10 ** 5,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
) -> List[CheckResult]:
    log.info("computing exact exponent sets for n in [2, %d]", exact_max)
    sets = exact_sets(2, min(exact_max, cap), cap, threads)
    checks = [
        check_constructions(4, constructions_max),
        check_lemma6(lemma6_max, budget, seed, cap, threads),
        check_lemma7(LEMMA7_MIN_N, lemma7_max, threads),
        check_system4_equivalence(seed=seed),
        check_sqrt(sets),
        check_gap_consistency(sets),
        check_wang_meng(sets),
    ]
    for check in checks:
        log.info("%s: %s (%d checked)", check.name, "pass" if check.passed else "FAIL", check.checked)
    return checks


# =========================
# Conjecture scan
# =========================


@dataclass
class ScanRow:
    n: int
    lo: int
    hi: int
    statuses: Dict[int, str]
    witnesses: Dict[int, WitnessRecord]
    budget_spent: int


@dataclass
class ScanReport:
    k: int
    rows: List[ScanRow] = field(default_factory=list)

    def status(self, n: int, e: int) -> Optional[str]:
        for row in self.rows:
            if row.n == n:
                return row.statuses.get(e)
        return None


def scan_window(n: int, k: int) -> range:
    """
    Exponents examined around [n/(k+1), n/k], widened by 2 each side.
    """
    lo = max(1, n // (k + 1) - 2)
    hi = min(n - 1, -(-n // k) + 2)
    return range(lo, hi + 1)


def conjecture_scan(
    k: int,
    n_lo: int,
    n_hi: int,
    budget: int,
    seed: int = DEFAULT_SEED,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    threads: int = 1,
    cached: Iterable[WitnessRecord] = (),
) -> ScanReport:
    """
    Classify each examined exponent; never claims an absence without a certificate.
    """
    cached = list(cached)
    report = ScanReport(k)
    for n in range(n_lo, n_hi + 1):
        window = scan_window(n, k)
        gaps = gap_intervals(n) if n >= 5 else None
        certified = {e: gaps.certificate_for(e) for e in window} if gaps else {}
        open_values = [e for e in window if not certified.get(e)]

        if n <= cap:
            result = cached_exact(n, cap)
            spent = 0
        else:
            result = search_exponent_set(
                n, budget, seed, threads, targets=open_values, cached=cached
            )
            spent = result.budget_spent.get("random_trials", 0)

        statuses: Dict[int, str] = {}
        witnesses: Dict[int, WitnessRecord] = {}
        for e in window:
            if certified.get(e):
                statuses[e] = STATUS_CERTIFIED
                if e in result:
                    log.error("n=%d: exponent %d witnessed inside certified gap", n, e)
            elif e in result:
                statuses[e] = STATUS_WITNESSED
                witnesses[e] = result.witnesses[e]
            else:
                statuses[e] = STATUS_UNDECIDED
        report.rows.append(ScanRow(n, window.start, window.stop - 1, statuses, witnesses, spent))
        log.info("n=%d scanned: %s", n, statuses)
    return report
