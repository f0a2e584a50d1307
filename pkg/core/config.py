"""
config.py

Constants, paths and run settings shared by the library and the CLI.

- Module-level constants are the single source of defaults
- `RunConfig` carries the settings one CLI invocation resolved
"""

import os
from dataclasses import dataclass
from typing import Optional

from core.errors import DomainError

# =========================
# Limits
# =========================

MIN_MODULUS = 2
MAX_MODULUS = 2 ** 20

# =========================
# Search defaults
# =========================

DEFAULT_EXHAUSTIVE_CAP = 30
DEFAULT_BUDGET = 10 ** 6
DEFAULT_SWEEP_SIZE = 4
RANDOM_MIN_SIZE = 2
RANDOM_MAX_SIZE = 12
RANDOM_BATCH = 4096

# fixed, so repeated runs reproduce the same witnesses
DEFAULT_SEED = 20081005

# =========================
# Table 1
# =========================

TABLE1_MIN_N = 5
TABLE1_MAX_N = 64

# moduli whose table absences are settled by a deep exhaustive run
DEEP_RUN_MODULI = (35,)

# =========================
# Paths
# =========================

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DATA_DIR = os.path.join(BASE_DIR, "data")
ARTIFACTS_DIR = os.path.join(BASE_DIR, "artifacts")

TABLE1_PATH = os.path.join(DATA_DIR, "table1.csv")
TABLE1_ERRATA_PATH = os.path.join(DATA_DIR, "table1_errata.csv")

CACHE_ENV_VAR = "EXPONENT_LAB_CACHE"


def default_cache_path() -> str:
    """
    Cache path from the environment, else the artifacts folder.
    """
    return os.environ.get(
        CACHE_ENV_VAR,
        os.path.join(ARTIFACTS_DIR, "witness_cache.jsonl"),
    )


def default_threads():
    return max(1, os.cpu_count() or 1)


# =========================
# Run configuration
# =========================

OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    threads: int = 1
    cache_path: Optional[str] = None
    output_format: str = "text"
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP
    sweep_size: int = DEFAULT_SWEEP_SIZE
    deep: bool = False

    def __post_init__(self):
        if self.budget < 0:
            raise DomainError(f"budget must be >= 0, got {self.budget}")
        if self.threads < 1:
            raise DomainError(f"threads must be >= 1, got {self.threads}")
        if self.exhaustive_cap < MIN_MODULUS:
            raise DomainError(f"exhaustive cap must be >= 2, got {self.exhaustive_cap}")
        if self.sweep_size < 2:
            raise DomainError(f"sweep size must be >= 2, got {self.sweep_size}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(
                f"unknown output format {self.output_format!r}; expected one of {OUTPUT_FORMATS}"
            )
