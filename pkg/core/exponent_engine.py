"""
exponent_engine.py

Exponent and diameter of the circulant digraph Circ(n, S).

- exponent: least e with e*S = Z_n, by iterating the sumset
- diameter: BFS from vertex 0 (circulants are vertex-transitive)
- quotient_diameter_bound: m + n/m - 2 for every qualifying divisor m
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import divisors

from core.errors import DomainError, EngineError
from core.residue_core import (
    GeneratorSpec,
    ResidueSet,
    element_order,
    full_mask,
    gcd_with_modulus,
    iter_bits,
    sumset_mask,
)


# =========================
# Result types
# =========================


@dataclass(frozen=True)
class ExponentResult:
    modulus: int
    set: GeneratorSpec
    exponent: Optional[int]
    primitive: bool
    iterations_used: int


@dataclass(frozen=True)
class DiameterResult:
    modulus: int
    set: GeneratorSpec
    diameter: Optional[int]
    strongly_connected: bool


def _check_set(n, s):
    if s.modulus != n:
        raise DomainError(f"set modulus {s.modulus} does not match n={n}")
    if s.is_empty():
        raise DomainError("set must be nonempty")


# =========================
# Exponent
# =========================


def exponent_of_primitive_mask(n: int, mask: int, elements: Sequence[int]) -> Tuple[int, int]:
    """
    Exponent of a set already known to be primitive.

    Returns (exponent, sumset steps used). `elements` must list the bits of `mask`.
    """
    full = full_mask(n)
    current = mask
    e = 1
    while current != full:
        if e >= n - 1:
            raise EngineError(
                f"sumset iteration passed n-1={n - 1} for primitive set {list(elements)} mod {n}"
            )
        current = sumset_mask(current, elements, n)
        e += 1
    return e, e - 1


def mask_is_primitive(n, elements):
    base = elements[0]
    return gcd_with_modulus(n, (x - base for x in elements)) == 1


def exponent_of_mask(n: int, mask: int) -> Optional[int]:
    """
    Exponent of the set with membership `mask`, or None when it is not primitive.
    """
    elements = list(iter_bits(mask))
    if not elements or not mask_is_primitive(n, elements):
        return None
    return exponent_of_primitive_mask(n, mask, elements)[0]


def exponent(n: int, s: ResidueSet) -> ExponentResult:
    _check_set(n, s)
    elements = s.elements()
    if not mask_is_primitive(n, elements):
        return ExponentResult(n, s.to_spec(), None, False, 0)
    e, steps = exponent_of_primitive_mask(n, s.members, elements)
    return ExponentResult(n, s.to_spec(), e, True, steps)


# =========================
# Connectivity & diameter
# =========================


def strongly_connected(n: int, s: ResidueSet) -> bool:
    """
    True iff the step values of S (untranslated) generate Z_n.
    """
    _check_set(n, s)
    return gcd_with_modulus(n, s.elements()) == 1


def bfs_distances(n: int, steps: Iterable[int]) -> np.ndarray:
    """
    Shortest walk lengths from vertex 0 in Circ(n, steps); -1 where unreachable.
    """
    step_arr = np.unique(np.asarray(list(steps), dtype=np.int64) % n)
    dist = np.full(n, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        reached = np.unique((frontier[:, None] + step_arr[None, :]) % n)
        frontier = reached[dist[reached] < 0]
        dist[frontier] = level
    return dist


def diameter(n: int, s: ResidueSet) -> DiameterResult:
    _check_set(n, s)
    if not strongly_connected(n, s):
        return DiameterResult(n, s.to_spec(), None, False)
    dist = bfs_distances(n, s.elements())
    if (dist < 0).any():
        raise EngineError(f"BFS left vertices unreached in strongly connected Circ({n}, {s})")
    return DiameterResult(n, s.to_spec(), int(dist.max()), True)


def quotient_diameter_bound(n: int, s: ResidueSet) -> List[Tuple[int, int]]:
    """
    (m, m + n/m - 2) for each divisor m of n such that S holds an element of order n/m.

    Each bound caps the diameter; the list is empty when S is not strongly connected.
    """
    if not strongly_connected(n, s):
        return []
    orders = {element_order(n, x) for x in s}
    return [(m, m + n // m - 2) for m in divisors(n) if n // m in orders]
