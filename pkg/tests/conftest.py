import numpy as np
import pytest

from core import config as cfg


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def no_search(monkeypatch):
    # ceiling below the start bound leaves an empty escalation schedule
    monkeypatch.setattr(cfg, "ENUM_CEILING", cfg.ENUM_START_BOUND - 1)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("COVERMAP_ENUM_CEILING", "COVERMAP_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr(cfg, "ENUM_CEILING", cfg.ENUM_CEILING)
    monkeypatch.setattr(cfg, "LOG_LEVEL", cfg.LOG_LEVEL)
