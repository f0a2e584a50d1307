"""
theory.py

Statement-level checks of the known results on exponent sets E_n:
constructions realising large exponents, the Euclidean-division criterion
for mid-range exponents, the covering system x = a*t + b (a + b <= k),
and the certified gap intervals.

Everything here is pure and cheap; runs that need the enumerator live in
pipelines/theory_checks.py.
"""

from dataclasses import dataclass, field
from math import isqrt
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from core.errors import DomainError, EngineError
from core.exponent_engine import diameter
from core.residue_core import GeneratorSpec, make_set
from core.results import ExponentSetResult

# =========================
# Certificate tags
# =========================

TAG_THM9 = "thm9"
TAG_COR4_MID = "cor4-mid"
TAG_COR4_UPPER = "cor4-upper"

LEMMA7_MIN_N = 28

# =========================
# Constructions
# =========================


def _ceil_div(a, b):
    return -(-a // b)


def known_constructions(n: int) -> List[Tuple[GeneratorSpec, int]]:
    """
    Witness families with closed-form exponents.

    ({0,1}, n-1), ({0,1,2}, n//2), ({0,1,3}, n//3 + 1), ({0,1,2,3}, ceil((n-1)/3))
    and, for even n, ({0,1,n/2,n/2+1}, n/2 - 1). Families whose literal
    elements do not fit in Z_n (only possible for n < 4) are skipped.
    """
    families: List[Tuple[Tuple[int, ...], int]] = [
        ((0, 1), n - 1),
        ((0, 1, 2), n // 2),
        ((0, 1, 3), n // 3 + 1),
        ((0, 1, 2, 3), _ceil_div(n - 1, 3)),
    ]
    if n % 2 == 0:
        half = n // 2
        families.append(((0, 1, half, half + 1), half - 1))

    out = []
    for elements, predicted in families:
        if elements[-1] >= n or len(set(elements)) != len(elements):
            continue
        out.append((GeneratorSpec(n, tuple(sorted(elements))), predicted))
    return out


def interval_witness(n: int, k: int) -> Optional[GeneratorSpec]:
    """
    Least interval {0, 1, ..., d} with exponent exactly k, if any.

    The interval [0, d] has exponent ceil((n-1)/d).
    """
    if not 1 <= k <= n - 1:
        return None
    d = _ceil_div(n - 1, k)
    if d > n - 1 or _ceil_div(n - 1, d) != k:
        return None
    return GeneratorSpec(n, tuple(range(d + 1)))


def lemma6_division(n: int, k: int) -> Tuple[int, int]:
    """
    (q, r) with n = (k-1)q + r and 0 <= r < k-1.
    """
    if k < 3 or k > n // 3:
        raise DomainError(f"k={k} outside [3, {n // 3}] for n={n}")
    return divmod(n, k - 1)


def lemma6_predicate(n: int, k: int) -> bool:
    q, r = lemma6_division(n, k)
    return q >= r


def lemma6_witness(n: int, k: int) -> Optional[GeneratorSpec]:
    """
    Interval witness for k when the division criterion holds.

    Covers the cases 2 <= r <= q (the interval [0, q]) and every k <= sqrt(n);
    the remaining cases are left to search.
    """
    if not lemma6_predicate(n, k):
        return None
    return interval_witness(n, k)


def sqrt_range_check(n: int, result: ExponentSetResult) -> bool:
    """
    True iff [1, isqrt(n)] is contained in the computed exponent set.
    """
    found = set(result.exponents)
    return all(k in found for k in range(1, isqrt(n) + 1))


def wang_meng_consistent(n: int, exponents: Iterable[int]) -> bool:
    """
    Every exponent is n-1, n//2, n//2 - 1, or at most n//3 + 1.
    """
    large = {n - 1, n // 2, n // 2 - 1}
    return all(e in large or e <= n // 3 + 1 for e in exponents)


# =========================
# Covering system
# =========================


def system4_solvable(n: int, t: int, k: int) -> bool:
    """
    True iff every x in Z_n is a*t + b (mod n) for some a, b >= 0 with a + b <= k.
    """
    if n < 2 or not 1 <= t < n or k < 0:
        raise DomainError(f"need n >= 2, 1 <= t < n, k >= 0; got n={n}, t={t}, k={k}")
    a = np.arange(k + 1, dtype=np.int64)[:, None]
    b = np.arange(k + 1, dtype=np.int64)[None, :]
    residues = (a * t + b) % n
    marked = np.zeros(n, dtype=bool)
    marked[residues[(a + b) <= k]] = True
    return bool(marked.all())


def lemma7_parameters(n: int) -> Tuple[int, List[int]]:
    """
    k = n//4 + 2 and the qualifying t values: [4, n//2) minus {n//3, n//3 + 1}.
    """
    if n < LEMMA7_MIN_N:
        raise DomainError(f"covering lemma needs n >= {LEMMA7_MIN_N}, got {n}")
    excluded = {n // 3, n // 3 + 1}
    return n // 4 + 2, [t for t in range(4, n // 2) if t not in excluded]


def lemma7_failures(n: int) -> List[int]:
    """
    Qualifying t for which the covering system fails at k = n//4 + 2.

    Each t is also checked against diameter(n, {0,1,t}) <= k; a disagreement
    between the two is a bug and raises EngineError.
    """
    k, ts = lemma7_parameters(n)
    failures = []
    for t in ts:
        solvable = system4_solvable(n, t, k)
        diam = diameter(n, make_set(n, [0, 1, t])).diameter
        if solvable != (diam is not None and diam <= k):
            raise EngineError(
                f"covering system and BFS disagree at n={n}, t={t}, k={k} (diameter {diam})"
            )
        if not solvable:
            failures.append(t)
    return failures


def lemma7_verify(n: int) -> bool:
    return not lemma7_failures(n)


# =========================
# Gaps
# =========================


@dataclass
class GapReport:
    n: int
    certified: List[Tuple[int, int, str]] = field(default_factory=list)
    uncertified_absences: List[int] = field(default_factory=list)
    consistent: bool = True
    definitive: bool = False

    def certificate_for(self, e: int) -> Optional[str]:
        for lo, hi, tag in self.certified:
            if lo <= e <= hi:
                return tag
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "certified": [{"lo": lo, "hi": hi, "tag": tag} for lo, hi, tag in self.certified],
            "uncertified_absences": list(self.uncertified_absences),
            "consistent": self.consistent,
            "definitive": self.definitive,
        }


def gap_intervals(n: int) -> GapReport:
    """
    Intervals proven disjoint from E_n, empty ones dropped, ascending.
    """
    if n < 5:
        raise DomainError(f"gap intervals need n >= 5, got {n}")
    candidates = [
        (n // 4 + 3, n // 3 - 2, TAG_THM9),
        (n // 3 + 2, n // 2 - 2, TAG_COR4_MID),
        (n // 2 + 1, n - 2, TAG_COR4_UPPER),
    ]
    certified = []
    for lo, hi, tag in candidates:
        lo, hi = max(lo, 1), min(hi, n - 2)
        if lo <= hi:
            certified.append((lo, hi, tag))
    return GapReport(n, sorted(certified))


def verify_gaps(n: int, result: ExponentSetResult) -> GapReport:
    """
    Check a computed exponent set against the certified gaps.

    `uncertified_absences` lists values absent from the set that no gap
    certifies and no construction predicts. They are definitive only when
    the set came from an exhaustive run.
    """
    report = gap_intervals(n)
    found = set(result.exponents)
    predicted = {p for _, p in known_constructions(n)}
    report.consistent = not any(report.certificate_for(e) for e in found)
    report.uncertified_absences = [
        v
        for v in range(1, n)
        if v not in found and v not in predicted and report.certificate_for(v) is None
    ]
    report.definitive = result.exhaustive
    return report
