"""Shared pytest fixtures for all tests."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from sepbayes.config import reload_config  # noqa: E402
from sepbayes.dataset import Dataset, add_intercept  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch, tmp_path):
    """Isolate every test from the caller's environment and cached settings."""
    for var in (
        "SEPBAYES_OUTPUT_DIR",
        "SEPBAYES_WORKERS",
        "SEPBAYES_ITERS",
        "SEPBAYES_BURNIN",
        "SEPBAYES_THIN",
        "SEPBAYES_CHAINS",
        "SEPBAYES_SEED",
        "SEPBAYES_INIT",
        "SEPBAYES_STEP_SCALE",
        "LOG_LEVEL",
    ):
        monkeypatch.delenv(var, raising=False)
    # Keep a developer's .env out of the picture
    monkeypatch.chdir(tmp_path)
    reload_config()
    yield
    reload_config()


@pytest.fixture
def toy_dataset() -> Dataset:
    """25 failures then 75 successes; x is 50 zeros then 50 ones, plus an intercept."""
    y = np.r_[np.zeros(25), np.ones(75)]
    x = np.r_[np.zeros(50), np.ones(50)]
    return add_intercept(Dataset(X=x[:, None], y=y, names=("x",)))


@pytest.fixture
def overlap_dataset() -> Dataset:
    """Twenty rows with overlapping classes: no separation in any direction."""
    x = np.array(
        [-1.2, -0.9, -0.7, -0.5, -0.4, -0.3, -0.1, 0.0, 0.1, 0.2,
         0.3, 0.4, 0.5, 0.6, 0.8, 0.9, 1.0, 1.1, 1.3, 1.5]
    )
    y = np.array([0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1])
    return add_intercept(Dataset(X=x[:, None], y=y, names=("x",)))


@pytest.fixture
def write_csv_file(tmp_path):
    """Write rows (first row the header) to a CSV file and return its path."""

    def _write(name: str, rows: list[list]) -> Path:
        path = tmp_path / name
        path.write_text("\n".join(",".join(str(v) for v in row) for row in rows) + "\n", encoding="utf-8")
        return path

    return _write
