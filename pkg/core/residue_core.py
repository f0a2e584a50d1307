"""
residue_core.py

Exact arithmetic on Z_n and on subsets of Z_n.

A subset is stored as an n-bit membership mask held in a Python int
(bit i set <=> i in S). Addition of a constant is a rotation of that
mask, so a sumset A + B is the OR of |B| rotated copies of A.

- Values are immutable and safe to share between threads
- Mask-level helpers are public so the search code can skip object
  construction in its hot loops
"""

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, List, Tuple

from core.config import MAX_MODULUS, MIN_MODULUS
from core.errors import DomainError

# =========================
# Mask helpers
# =========================


def full_mask(n):
    return (1 << n) - 1


def iter_bits(mask):
    """
    Yield the set bit positions of `mask` in ascending order.
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def rotate_mask(mask, shift, n):
    """
    Mask of {x + shift mod n : x in mask}.
    """
    shift %= n
    if shift == 0:
        return mask
    return ((mask << shift) | (mask >> (n - shift))) & full_mask(n)


def sumset_mask(a, shifts, n):
    out = 0
    for s in shifts:
        out |= rotate_mask(a, s, n)
    return out


def mask_from_elements(elements):
    mask = 0
    for x in elements:
        mask |= 1 << x
    return mask


def gcd_with_modulus(n, values):
    return reduce(gcd, values, n)


def units(n: int) -> List[int]:
    """
    Residues u in [1, n) with gcd(u, n) = 1.
    """
    return [u for u in range(1, n) if gcd(u, n) == 1]


def _check_modulus(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"modulus must be an integer, got {n!r}")
    if n < MIN_MODULUS:
        raise DomainError(f"modulus must be >= {MIN_MODULUS}, got {n}")
    if n > MAX_MODULUS:
        raise DomainError(f"modulus must be <= {MAX_MODULUS}, got {n}")


# =========================
# Domain types
# =========================


@dataclass(frozen=True)
class GeneratorSpec:
    """
    User-facing form of S: the modulus and its sorted, distinct residues.
    """

    modulus: int
    elements: Tuple[int, ...]

    def __post_init__(self):
        _check_modulus(self.modulus)
        els = tuple(self.elements)
        if not els:
            raise DomainError("generator set must be nonempty")
        if any(x < 0 or x >= self.modulus for x in els):
            raise DomainError(f"elements {els} not all in [0, {self.modulus})")
        if any(a >= b for a, b in zip(els, els[1:])):
            raise DomainError(f"elements {els} must be sorted and distinct")
        object.__setattr__(self, "elements", els)

    def to_set(self) -> "ResidueSet":
        return ResidueSet(self.modulus, mask_from_elements(self.elements))

    def literal(self):
        return ",".join(str(x) for x in self.elements)

    def __str__(self):
        return "{" + ", ".join(str(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class ResidueSet:
    """
    A subset of Z_n as a modulus plus an n-bit membership mask.
    """

    modulus: int
    members: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        if self.members < 0 or self.members >> self.modulus:
            raise DomainError(
                f"membership mask {self.members:#x} does not fit modulus {self.modulus}"
            )

    def cardinality(self):
        return bin(self.members).count("1")

    def elements(self) -> List[int]:
        return list(iter_bits(self.members))

    def is_empty(self):
        return self.members == 0

    def is_full(self):
        return self.members == full_mask(self.modulus)

    def min_element(self) -> int:
        if not self.members:
            raise DomainError("empty set has no least element")
        return (self.members & -self.members).bit_length() - 1

    def to_spec(self) -> GeneratorSpec:
        return GeneratorSpec(self.modulus, tuple(self.elements()))

    def __contains__(self, x):
        return isinstance(x, int) and 0 <= x < self.modulus and bool(self.members >> x & 1)

    def __iter__(self):
        return iter_bits(self.members)

    def __len__(self):
        return self.cardinality()

    def __str__(self):
        return "{" + ", ".join(str(x) for x in self.elements()) + "}"


def _require_same_modulus(a, b):
    if a.modulus != b.modulus:
        raise DomainError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def _require_nonempty(s):
    if s.is_empty():
        raise DomainError("set must be nonempty")


# =========================
# Operations
# =========================


def make_set(n: int, xs: Iterable[int]) -> ResidueSet:
    """
    Build a ResidueSet from arbitrary integers, reducing each mod n.
    """
    _check_modulus(n)
    values = list(xs)
    if not values:
        raise DomainError("element list must be nonempty")
    return ResidueSet(n, mask_from_elements(x % n for x in values))


def parse_set_literal(n: int, text: str) -> ResidueSet:
    """
    Parse the comma-separated literal used by the CLI and data files, e.g. `0,1,12`.
    """
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(p == "" for p in parts):
        raise DomainError(f"malformed set literal {text!r}")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise DomainError(f"malformed set literal {text!r}") from None
    return make_set(n, values)


def sumset(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """
    {a + b mod n : a in A, b in B}.
    """
    _require_same_modulus(a, b)
    n = a.modulus
    # rotate the larger mask by each element of the smaller set
    if a.cardinality() < b.cardinality():
        a, b = b, a
    return ResidueSet(n, sumset_mask(a.members, iter_bits(b.members), n))


def k_fold_sumset(s: ResidueSet, k: int) -> ResidueSet:
    """
    k*S = S + S + ... + S with k summands; k >= 1.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _require_nonempty(s)
    n = s.modulus
    full = full_mask(n)
    shifts = s.elements()
    current = s.members
    for _ in range(k - 1):
        if current == full:
            break
        current = sumset_mask(current, shifts, n)
    return ResidueSet(n, current)


def translate(s: ResidueSet, x: int) -> ResidueSet:
    return ResidueSet(s.modulus, rotate_mask(s.members, x, s.modulus))


def scale(s: ResidueSet, u: int) -> ResidueSet:
    """
    uS for a unit u; raises DomainError when gcd(u, n) != 1.
    """
    n = s.modulus
    if gcd(u % n, n) != 1:
        raise DomainError(f"{u} is not a unit modulo {n}")
    return ResidueSet(n, mask_from_elements(u * x % n for x in iter_bits(s.members)))


def element_order(n: int, s: int) -> int:
    """
    Additive order of s in Z_n, i.e. n / gcd(s, n).
    """
    _check_modulus(n)
    if not 0 <= s < n:
        raise DomainError(f"residue {s} not in [0, {n})")
    return n // gcd(s, n)


def is_primitive(n: int, s: ResidueSet) -> bool:
    """
    Circ(n, S) is primitive iff S - min(S) generates Z_n.

    A singleton is never primitive for n >= 2.
    """
    if s.modulus != n:
        raise DomainError(f"set modulus {s.modulus} does not match n={n}")
    _require_nonempty(s)
    base = s.min_element()
    return gcd_with_modulus(n, (x - base for x in iter_bits(s.members))) == 1


def quotient_set(s: ResidueSet, m: int) -> ResidueSet:
    """
    Image of S under the quotient map Z_n -> Z_m.
    """
    n = s.modulus
    if m < MIN_MODULUS or n % m != 0:
        raise DomainError(f"quotient modulus {m} must be >= 2 and divide {n}")
    return ResidueSet(m, mask_from_elements(x % m for x in iter_bits(s.members)))
