import os

import pytest

from core.config import ARTIFACTS_DIR, CACHE_ENV_VAR, RunConfig, default_cache_path
from core.errors import DomainError


@pytest.mark.parametrize(
    "kwargs",
    [
        {"budget": -1},
        {"threads": 0},
        {"exhaustive_cap": 1},
        {"sweep_size": 1},
        {"output_format": "xml"},
    ],
)
def test_run_config_rejects_bad_values(kwargs):
    with pytest.raises(DomainError):
        RunConfig(**kwargs)


def test_default_cache_path_follows_environment(monkeypatch, tmp_path):
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    assert default_cache_path() == os.path.join(ARTIFACTS_DIR, "witness_cache.jsonl")
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "w.jsonl"))
    assert default_cache_path() == str(tmp_path / "w.jsonl")
