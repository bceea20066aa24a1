import numpy as np
import pytest

from zonovol.core.config import settings
from zonovol.services.model_service import resolve_model


@pytest.fixture(scope="function")
def rng():
    """Seeded numpy generator; every test starts from the same stream."""
    return np.random.default_rng(20240607)


@pytest.fixture(scope="session")
def ex1():
    """Bundled reachable-region example (n = 3, r = 1)."""
    return resolve_model("ex1")


@pytest.fixture(scope="session")
def ex2():
    """Bundled controllable-region example (n = 4, r = 1)."""
    return resolve_model("ex2")


@pytest.fixture(scope="function")
def model_dir(tmp_path, monkeypatch):
    """Point settings.MODEL_DIR to a temporary directory for file tests."""
    monkeypatch.setattr(settings, "MODEL_DIR", str(tmp_path))
    return tmp_path
