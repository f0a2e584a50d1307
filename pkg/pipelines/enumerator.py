"""
enumerator.py

Determine exponent sets E_n.

- enumerate_exact: every subset of Z_n containing 0, exact result (small n)
- enumerate_min_support: every set with 0 in S and |S| <= max_size
- search_exponent_set: constructions + min-support sweep + seeded random sets
- find_witness: one exponent value, cheapest source first

Work is split into independent units keyed by the least nonzero element
of S. Each unit reports the least membership mask seen per exponent and
the reduction takes minima, so results do not depend on the worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from joblib import Parallel, delayed

from core.config import (
    DEFAULT_EXHAUSTIVE_CAP,
    DEFAULT_SEED,
    DEFAULT_SWEEP_SIZE,
    RANDOM_BATCH,
    RANDOM_MAX_SIZE,
    RANDOM_MIN_SIZE,
)
from core.errors import BudgetError, DomainError
from core.exponent_engine import exponent_of_mask, exponent_of_primitive_mask
from core.residue_core import (
    GeneratorSpec,
    ResidueSet,
    full_mask,
    iter_bits,
    units,
)
from core.results import (
    METHOD_CONSTRUCTION,
    METHOD_EXHAUSTIVE,
    METHOD_LEMMA6,
    METHOD_RANDOM,
    METHOD_SWEEP,
    CanonicalClass,
    ExponentSetResult,
    WitnessRecord,
)
from core.theory import interval_witness, known_constructions

log = logging.getLogger(__name__)

# =========================
# Canonical forms
# =========================


def _orbit_min_small(n: int, elements: List[int], unit_list: List[int]) -> int:
    # the orbit minimum contains 0, so some element is translated onto 0
    best = None
    for u in unit_list:
        scaled = [u * x % n for x in elements]
        for y in scaled:
            mask = 0
            for x in scaled:
                mask |= 1 << ((x - y) % n)
            if best is None or mask < best:
                best = mask
    return best


def _orbit_max_small(n: int, elements: List[int], unit_list: List[int]) -> int:
    # the orbit maximum contains n-1, so some element is translated onto n-1
    best = -1
    top = n - 1
    for u in unit_list:
        scaled = [u * x % n for x in elements]
        for y in scaled:
            mask = 0
            for x in scaled:
                mask |= 1 << ((x - y + top) % n)
            if mask > best:
                best = mask
    return best


def canonical_mask(n: int, mask: int, unit_list: Optional[List[int]] = None) -> int:
    """
    Least membership mask in the orbit of `mask` under x -> u*x + c.
    """
    if unit_list is None:
        unit_list = units(n) or [1]
    full = full_mask(n)
    elements = list(iter_bits(mask))
    if 2 * len(elements) <= n:
        return _orbit_min_small(n, elements, unit_list)
    complement = list(iter_bits(full ^ mask))
    if not complement:
        return mask
    # complementing reverses the order and commutes with affine maps
    return full ^ _orbit_max_small(n, complement, unit_list)


def canonicalize(n: int, s: ResidueSet) -> CanonicalClass:
    if s.modulus != n:
        raise DomainError(f"set modulus {s.modulus} does not match n={n}")
    if s.is_empty():
        raise DomainError("set must be nonempty")
    return CanonicalClass(n, ResidueSet(n, canonical_mask(n, s.members)))


def is_unit_minimal(n: int, mask: int, unit_list: List[int]) -> bool:
    """
    True iff no unit scaling of `mask` gives a smaller mask.
    """
    elements = list(iter_bits(mask))
    for u in unit_list:
        scaled = 0
        for x in elements:
            scaled |= 1 << (u * x % n)
        if scaled < mask:
            return False
    return True


def _spec_from_mask(n: int, mask: int) -> GeneratorSpec:
    return GeneratorSpec(n, tuple(iter_bits(mask)))


# =========================
# Witness bookkeeping
# =========================


class _WitnessBook:
    """
    Best witness per exponent; ties keep the first offer.
    """

    def __init__(self, n: int) -> None:
        self.n = n
        self.unit_list = units(n) or [1]
        self.records: Dict[int, WitnessRecord] = {}
        self._keys: Dict[int, int] = {}

    def offer(self, record: WitnessRecord, key: Optional[int] = None) -> bool:
        if key is None:
            key = canonical_mask(self.n, record.witness.to_set().members, self.unit_list)
        e = record.exponent
        if e in self._keys and self._keys[e] <= key:
            return False
        self.records[e] = record
        self._keys[e] = key
        return True

    def offer_mask(self, e: int, mask: int, method: str, seed: Optional[int] = None) -> bool:
        """
        Offer a mask that is already an orbit minimum.
        """
        if e in self._keys and self._keys[e] <= mask:
            return False
        self.records[e] = WitnessRecord(self.n, e, _spec_from_mask(self.n, mask), method, seed)
        self._keys[e] = mask
        return True

    def exponents(self) -> FrozenSet[int]:
        return frozenset(self.records)

    def result(self, exhaustive: bool, budget_spent: Dict[str, int]) -> ExponentSetResult:
        return ExponentSetResult.from_witnesses(self.n, self.records, exhaustive, budget_spent)


def construction_witnesses(n: int) -> List[WitnessRecord]:
    """
    Verified witnesses from the closed-form families and the interval family.
    """
    out = []
    for spec, predicted in known_constructions(n):
        record = WitnessRecord(n, predicted, spec, METHOD_CONSTRUCTION)
        if record.verify():
            out.append(record)
        else:
            log.error("construction %s mod %d does not have exponent %d", spec, n, predicted)
    for k in range(1, n):
        spec = interval_witness(n, k)
        if spec is not None:
            out.append(WitnessRecord(n, k, spec, METHOD_LEMMA6))
    return out


def _parallel(threads: int, tasks: Iterable):
    return Parallel(n_jobs=threads)(tasks)


def _merge_counters(parts: Iterable[Dict[str, int]]) -> Dict[str, int]:
    total: Dict[str, int] = {}
    for part in parts:
        for key, value in part.items():
            total[key] = total.get(key, 0) + value
    return total


def _merge_minima(parts: Iterable[Dict[int, int]]) -> Dict[int, int]:
    best: Dict[int, int] = {}
    for part in parts:
        for e, mask in part.items():
            if e not in best or mask < best[e]:
                best[e] = mask
    return best


# =========================
# Min-support sweep
# =========================


def _sweep_unit(n: int, first: int, max_size: int) -> Tuple[Dict[int, int], Dict[str, int]]:
    best: Dict[int, int] = {}
    examined = 0
    g_first = gcd(n, first)
    for extra in range(0, max_size - 1):
        for rest in combinations(range(first + 1, n), extra):
            examined += 1
            g = g_first
            for x in rest:
                g = gcd(g, x)
            if g != 1:
                continue
            elements = [0, first, *rest]
            mask = 1 | (1 << first)
            for x in rest:
                mask |= 1 << x
            e, _ = exponent_of_primitive_mask(n, mask, elements)
            if e not in best or mask < best[e]:
                best[e] = mask
    return best, {"sweep_sets": examined}


def enumerate_min_support(n: int, max_size: int, threads: int = 1) -> ExponentSetResult:
    """
    Every exponent attained by a set with 0 in S and |S| <= max_size.

    The least mask found per exponent is the orbit minimum among such sets,
    since affine maps preserve size and orbit minima contain 0.
    """
    if max_size < 2:
        raise DomainError(f"max_size must be >= 2, got {max_size}")
    max_size = min(max_size, n)
    parts = _parallel(threads, (delayed(_sweep_unit)(n, a, max_size) for a in range(1, n)))
    book = _WitnessBook(n)
    for e, mask in sorted(_merge_minima(p for p, _ in parts).items()):
        book.offer_mask(e, mask, METHOD_SWEEP)
    return book.result(False, _merge_counters(c for _, c in parts))


# =========================
# Exhaustive enumeration
# =========================


def _pruned_unit(n: int, first: int, threshold: int) -> Tuple[Dict[int, int], Dict[str, int]]:
    """
    Depth-first scan of all sets {0, first, ...} built in increasing order.

    A primitive set with exponent <= threshold has only supersets with
    exponent <= threshold, so its subtree is skipped.
    """
    best: Dict[int, int] = {}
    counters = {"sets_examined": 0, "subtrees_pruned": 0}
    elements = [0, first]

    def visit(mask: int, g: int) -> None:
        counters["sets_examined"] += 1
        if g == 1:
            e, _ = exponent_of_primitive_mask(n, mask, elements)
            if e not in best or mask < best[e]:
                best[e] = mask
            if e <= threshold:
                counters["subtrees_pruned"] += 1
                return
        for x in range(elements[-1] + 1, n):
            elements.append(x)
            visit(mask | (1 << x), gcd(g, x))
            elements.pop()

    visit(1 | (1 << first), gcd(n, first))
    return best, counters


def _full_unit(n: int, first: int, unit_list: List[int]) -> Tuple[Dict[int, int], Dict[str, int]]:
    """
    Every set {0, first, ...}, skipping sets that a unit scaling makes smaller.
    """
    best: Dict[int, int] = {}
    counters = {"sets_examined": 0, "scaling_duplicates": 0}
    base = 1 | (1 << first)
    tail = n - first - 1
    for bits in range(1 << tail):
        mask = base | (bits << (first + 1))
        counters["sets_examined"] += 1
        if not is_unit_minimal(n, mask, unit_list):
            counters["scaling_duplicates"] += 1
            continue
        e = exponent_of_mask(n, mask)
        if e is not None and (e not in best or mask < best[e]):
            best[e] = mask
    return best, counters


def prune_threshold(exponents: Iterable[int]) -> int:
    """
    Largest t with [1, t] inside `exponents` (0 if 1 is missing).
    """
    found = set(exponents)
    t = 0
    while t + 1 in found:
        t += 1
    return t


def enumerate_exact(
    n: int,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    threads: int = 1,
    prune: bool = True,
    sweep_size: int = DEFAULT_SWEEP_SIZE,
) -> ExponentSetResult:
    """
    The complete exponent set E_n with orbit-minimal witnesses.

    With `prune`, exponents already witnessed as an initial run [1, T] by
    constructions and the min-support sweep let the scan skip supersets of
    sets with exponent <= T; every set with a larger exponent is still
    visited. Without it, all subsets containing 0 are scanned, minus unit
    scaling duplicates.
    """
    if n > cap:
        raise BudgetError(
            f"n={n} exceeds the exhaustive cap {cap}; use search mode or raise the cap"
        )
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")

    book = _WitnessBook(n)
    counters: Dict[str, int] = {}
    if prune:
        for record in construction_witnesses(n):
            book.offer(record)
        sweep = enumerate_min_support(n, min(sweep_size, n), threads)
        for record in sweep.witnesses.values():
            book.offer(record)
        threshold = prune_threshold(book.exponents())
        counters["prune_threshold"] = threshold
        log.info("n=%d: exact scan with prune threshold %d", n, threshold)
        parts = _parallel(
            threads, (delayed(_pruned_unit)(n, a, threshold) for a in range(1, n))
        )
    else:
        unit_list = units(n)
        parts = _parallel(threads, (delayed(_full_unit)(n, a, unit_list) for a in range(1, n)))

    counters.update(_merge_counters(c for _, c in parts))
    scanned = _merge_minima(p for p, _ in parts)

    exact = _WitnessBook(n)
    for e, mask in sorted(scanned.items()):
        # already minimal above the threshold; below it the scan may have stopped early
        exact.offer_mask(e, canonical_mask(n, mask, exact.unit_list), METHOD_EXHAUSTIVE)
    # values below the prune threshold may only be witnessed by the seeding sources
    for e, record in book.records.items():
        if e not in exact.records:
            exact.offer(record)
    return exact.result(True, counters)


@lru_cache(maxsize=None)
def cached_exact(n: int, cap: int = DEFAULT_EXHAUSTIVE_CAP) -> ExponentSetResult:
    """
    Memoised enumerate_exact; callers must not mutate the result.
    """
    return enumerate_exact(n, cap)


def deep_exact(n: int, threads: int = 1) -> ExponentSetResult:
    """
    Exact scan for a single n above the default cap.
    """
    return enumerate_exact(n, cap=n, threads=threads)


# =========================
# Random search
# =========================


def _random_unit(
    n: int,
    trials: int,
    seed,
    skip: FrozenSet[int],
    targets: Optional[FrozenSet[int]],
) -> Tuple[Dict[int, int], Dict[str, int]]:
    """
    `trials` random sets containing 0, size uniform in [2, min(n, 12)].

    Only exponents outside `skip` are recorded; the first hit per exponent is
    canonicalised. Stops early once every target is found.
    """
    rng = np.random.default_rng(seed)
    unit_list = units(n) or [1]
    hi = min(n, RANDOM_MAX_SIZE)
    batch_cap = max(1, min(RANDOM_BATCH, (1 << 22) // n))
    remaining = None if targets is None else set(targets) - set(skip)
    found: Dict[int, int] = {}
    done = 0
    if remaining is not None and not remaining:
        return found, {"random_trials": 0}

    while done < trials:
        batch = min(batch_cap, trials - done)
        sizes = rng.integers(RANDOM_MIN_SIZE, hi + 1, size=batch)
        picks = np.argsort(rng.random((batch, n - 1)), axis=1)[:, : hi - 1] + 1
        for size, row in zip(sizes.tolist(), picks.tolist()):
            done += 1
            elements = [0, *sorted(row[: size - 1])]
            g = n
            for x in elements[1:]:
                g = gcd(g, x)
            if g != 1:
                continue
            mask = 0
            for x in elements:
                mask |= 1 << x
            e, _ = exponent_of_primitive_mask(n, mask, elements)
            if e in skip or e in found:
                continue
            found[e] = canonical_mask(n, mask, unit_list)
            if remaining is not None:
                remaining.discard(e)
                if not remaining:
                    return found, {"random_trials": done}
    return found, {"random_trials": done}


def random_search(
    n: int,
    budget: int,
    seed: int,
    threads: int = 1,
    skip: Iterable[int] = (),
    targets: Optional[Iterable[int]] = None,
) -> Tuple[Dict[int, int], Dict[str, int]]:
    """
    Seeded random sampling; returns (exponent -> orbit-minimal mask, counters).

    Single-threaded runs draw from `seed` directly; threaded runs split the
    budget over child seeds spawned from it.
    """
    if budget < 0:
        raise DomainError(f"budget must be >= 0, got {budget}")
    skip = frozenset(skip)
    targets = None if targets is None else frozenset(targets)
    if budget == 0:
        return {}, {"random_trials": 0}
    if threads == 1:
        return _random_unit(n, budget, seed, skip, targets)

    children = np.random.SeedSequence(seed).spawn(threads)
    shares = [budget // threads + (1 if i < budget % threads else 0) for i in range(threads)]
    parts = _parallel(
        threads,
        (
            delayed(_random_unit)(n, share, child, skip, targets)
            for share, child in zip(shares, children)
            if share
        ),
    )
    return _merge_minima(p for p, _ in parts), _merge_counters(c for _, c in parts)


# =========================
# Search mode
# =========================


def search_exponent_set(
    n: int,
    budget: int,
    seed: int = DEFAULT_SEED,
    threads: int = 1,
    sweep_size: int = DEFAULT_SWEEP_SIZE,
    targets: Optional[Iterable[int]] = None,
    cached: Iterable[WitnessRecord] = (),
) -> ExponentSetResult:
    """
    Union of constructions, the min-support sweep, cached witnesses and
    `budget` random sets. Never exhaustive.

    With `targets`, random sampling stops as soon as each target is witnessed.
    """
    if budget < 0:
        raise DomainError(f"budget must be >= 0, got {budget}")
    book = _WitnessBook(n)
    for record in construction_witnesses(n):
        book.offer(record)
    for record in cached:
        if record.n == n:
            book.offer(record)

    sweep = enumerate_min_support(n, min(sweep_size, n), threads)
    for record in sweep.witnesses.values():
        book.offer(record)

    found, counters = random_search(
        n, budget, seed, threads, skip=book.exponents(), targets=targets
    )
    for e, mask in sorted(found.items()):
        book.offer_mask(e, mask, METHOD_RANDOM, seed)

    counters = {**sweep.budget_spent, **counters}
    log.info(
        "n=%d: search found %d exponents (%d random trials)",
        n, len(book.records), counters.get("random_trials", 0),
    )
    return book.result(False, counters)


@dataclass(frozen=True)
class WitnessLookup:
    """
    Outcome of find_witness. `record is None` means no witness was found;
    `definitive` marks that absence as proven (exhaustive range).
    """

    n: int
    exponent: int
    record: Optional[WitnessRecord]
    definitive: bool


def find_witness(
    n: int,
    e: int,
    budget: int,
    seed: int = DEFAULT_SEED,
    cap: int = DEFAULT_EXHAUSTIVE_CAP,
    threads: int = 1,
    cached: Iterable[WitnessRecord] = (),
    sweep_size: int = DEFAULT_SWEEP_SIZE,
) -> WitnessLookup:
    """
    A set with exponent exactly e, trying cache, constructions, then either
    the exact scan (n <= cap) or the sweep followed by random sampling.
    """
    if not 1 <= e <= n - 1:
        raise DomainError(f"exponent {e} outside [1, {n - 1}]")

    for record in cached:
        if record.n == n and record.exponent == e and record.verify():
            return WitnessLookup(n, e, record, True)

    for record in construction_witnesses(n):
        if record.exponent == e:
            return WitnessLookup(n, e, record, True)

    if n <= cap:
        exact = cached_exact(n, cap)
        return WitnessLookup(n, e, exact.witnesses.get(e), True)

    result = search_exponent_set(n, budget, seed, threads, sweep_size, targets=[e])
    record = result.witnesses.get(e)
    return WitnessLookup(n, e, record, record is not None)
