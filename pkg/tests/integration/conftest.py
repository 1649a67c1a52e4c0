"""Fixtures for integration tests that drive the command line end to end."""

import json
from pathlib import Path

import numpy as np
import pytest

from sepbayes.cli import main
from sepbayes.cli.simulate import simulate
from sepbayes.dataset import write_csv


@pytest.fixture
def run_cli(capsys):
    """Run `sepbayes <args>` in-process and return (exit code, stdout, stderr)."""

    def _run(*args: str) -> tuple[int, str, str]:
        code = main([str(a) for a in args])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def fast_sampler(monkeypatch):
    """Short chains through the environment, the way a user would shorten a run."""
    monkeypatch.setenv("SEPBAYES_ITERS", "400")
    monkeypatch.setenv("SEPBAYES_BURNIN", "100")
    from sepbayes.config import reload_config

    reload_config()


@pytest.fixture
def toy_csv(tmp_path, toy_dataset) -> Path:
    path = tmp_path / "toy.csv"
    write_csv(toy_dataset, path)
    return path


@pytest.fixture
def overlap_csv(tmp_path, overlap_dataset) -> Path:
    path = tmp_path / "overlap.csv"
    write_csv(overlap_dataset, path)
    return path


@pytest.fixture
def scenario_csv(tmp_path):
    """Write a simulated scenario to CSV and return its path."""

    def _write(name: str, n: int = 30, seed: int = 1) -> Path:
        path = tmp_path / f"{name}-{seed}.csv"
        write_csv(simulate(name, n=n, seed=seed), path)
        return path

    return _write


@pytest.fixture
def read_json():
    def _read(path: Path) -> dict:
        return json.loads(Path(path).read_text(encoding="utf-8"))

    return _read


@pytest.fixture
def heldout_csv(tmp_path) -> Path:
    """Held-out rows on the scale of the overlap data."""
    rng = np.random.default_rng(12)
    x = np.round(rng.uniform(-1.5, 1.5, 15), 3)
    y = (rng.uniform(size=15) < 1.0 / (1.0 + np.exp(-1.5 * x))).astype(int)
    path = tmp_path / "test.csv"
    path.write_text(
        "y,x\n" + "".join(f"{yi},{xi}\n" for yi, xi in zip(y, x)), encoding="utf-8"
    )
    return path
