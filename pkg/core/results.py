"""
results.py

Record types produced by the enumerator and consumed by theory checks,
the witness cache and the report renderers.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from core.errors import DomainError
from core.exponent_engine import exponent_of_mask
from core.residue_core import GeneratorSpec, ResidueSet

# =========================
# Witness methods
# =========================

METHOD_EXHAUSTIVE = "exhaustive"
METHOD_CONSTRUCTION = "construction"
METHOD_LEMMA6 = "lemma6"
METHOD_SWEEP = "sweep"
METHOD_RANDOM = "random"

METHODS = (
    METHOD_EXHAUSTIVE,
    METHOD_CONSTRUCTION,
    METHOD_LEMMA6,
    METHOD_SWEEP,
    METHOD_RANDOM,
)


@dataclass(frozen=True)
class WitnessRecord:
    """
    One set certifying that `exponent` belongs to E_n.
    """

    n: int
    exponent: int
    witness: GeneratorSpec
    method: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown witness method {self.method!r}")
        if self.witness.modulus != self.n:
            raise DomainError(
                f"witness modulus {self.witness.modulus} does not match n={self.n}"
            )

    def verify(self) -> bool:
        return exponent_of_mask(self.n, self.witness.to_set().members) == self.exponent

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "exponent": self.exponent,
            "witness": list(self.witness.elements),
            "method": self.method,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, row: Mapping[str, Any]) -> "WitnessRecord":
        if set(row) != {"n", "exponent", "witness", "method", "seed"}:
            raise DomainError(f"unexpected witness fields {sorted(row)}")
        n, e, seed = row["n"], row["exponent"], row["seed"]
        if not isinstance(n, int) or not isinstance(e, int):
            raise DomainError("n and exponent must be integers")
        if seed is not None and not isinstance(seed, int):
            raise DomainError("seed must be an integer or null")
        elements = row["witness"]
        if not isinstance(elements, list) or not all(isinstance(x, int) for x in elements):
            raise DomainError("witness must be an array of integers")
        return cls(n, e, GeneratorSpec(n, tuple(elements)), str(row["method"]), seed)


@dataclass(frozen=True)
class CanonicalClass:
    """
    An affine orbit of subsets of Z_n, named by its least member.
    """

    modulus: int
    representative: ResidueSet


@dataclass
class ExponentSetResult:
    modulus: int
    exponents: List[int]
    witnesses: Dict[int, WitnessRecord]
    exhaustive: bool
    budget_spent: Dict[str, int] = field(default_factory=dict)

    def __contains__(self, e):
        return e in self.witnesses

    def density(self) -> float:
        return len(self.exponents) / self.modulus

    @classmethod
    def from_witnesses(
        cls,
        n: int,
        witnesses: Mapping[int, WitnessRecord],
        exhaustive: bool,
        budget_spent: Optional[Dict[str, int]] = None,
    ) -> "ExponentSetResult":
        ordered = {e: witnesses[e] for e in sorted(witnesses)}
        return cls(n, list(ordered), ordered, exhaustive, dict(budget_spent or {}))
