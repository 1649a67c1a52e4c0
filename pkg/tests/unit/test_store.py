"""Unit tests for the file-based run store and manifests."""

import json

import numpy as np
import pytest

from sepbayes.dataset import standardize
from sepbayes.errors import DiagnosticsError, SepbayesError
from sepbayes.samplers import Draws
from sepbayes.store import RunManifest, RunStore, dumps


@pytest.fixture
def store(tmp_path) -> RunStore:
    return RunStore(tmp_path / "out")


@pytest.fixture
def draws(toy_dataset) -> Draws:
    _, record = standardize(toy_dataset)
    rng = np.random.default_rng(0)
    return Draws(
        samples=rng.normal(size=(10, 2)) / 3.0,
        chain_ids=np.repeat([0, 1], 5),
        names=toy_dataset.names,
        config={"iterations": 5, "seed": 1},
        sampler="metropolis",
        link="probit",
        prior={"family": "independent-normal", "locations": [0, 0], "scales": [10, 2.5]},
        acceptance={0: 0.25, 1: 0.3},
        standardization=record,
        existence=[{"coef": "(Intercept)", "verdict": "exists"}, {"coef": "x", "verdict": "exists"}],
    )


class TestDraws:
    def test_write_then_read(self, store, draws):
        csv_path, sidecar = store.write_draws(draws)
        assert csv_path.name == "draws.csv" and sidecar.name == "draws.json"
        again = RunStore.read_draws(csv_path)
        np.testing.assert_array_equal(again.samples, draws.samples)
        np.testing.assert_array_equal(again.chain_ids, draws.chain_ids)
        assert again.names == draws.names
        assert again.link == "probit"
        assert again.acceptance == {0: 0.25, 1: 0.3}
        assert again.standardization.to_dict() == draws.standardization.to_dict()
        assert again.existence == draws.existence

    def test_csv_has_no_run_specific_bytes(self, store, draws):
        first = store.write_draws(draws, stem="a")[0].read_bytes()
        second = store.write_draws(draws.with_metadata(wall_time=99.0), stem="b")[0].read_bytes()
        assert first == second
        assert first.decode().splitlines()[0] == "(Intercept),x,chain"

    def test_read_without_sidecar(self, store, draws):
        csv_path, sidecar = store.write_draws(draws)
        sidecar.unlink()
        again = RunStore.read_draws(csv_path)
        assert again.link == "logit"
        assert again.standardization is None

    def test_missing_file(self, tmp_path):
        with pytest.raises(DiagnosticsError, match="not found"):
            RunStore.read_draws(tmp_path / "none.csv")

    def test_missing_chain_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(DiagnosticsError, match="chain"):
            RunStore.read_draws(path)

    def test_non_finite_draws(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,chain\n1,0\n,0\n", encoding="utf-8")
        with pytest.raises(DiagnosticsError, match="non-finite"):
            RunStore.read_draws(path)

    def test_corrupt_sidecar(self, store, draws):
        csv_path, sidecar = store.write_draws(draws)
        sidecar.write_text("{not json", encoding="utf-8")
        with pytest.raises(DiagnosticsError, match="could not parse JSON"):
            RunStore.read_draws(csv_path)


class TestJson:
    def test_reads_written_payload(self, store):
        path = store.write_json("report.json", {"kind": "none", "values": [1.5, 2]})
        assert RunStore.read_json(path) == {"kind": "none", "values": [1.5, 2]}

    def test_missing_file(self, tmp_path):
        with pytest.raises(DiagnosticsError, match="not found"):
            RunStore.read_json(tmp_path / "absent.json")


class TestManifests:
    def test_record_and_list(self, store):
        output = store.write_json("report.json", {"kind": "none"})
        first = RunManifest.start("check", inputs={"data": "train.csv"}, seed=1, outputs=[str(output)])
        store.record_run(first)
        second = RunManifest.start("fit", seed=2)
        second.created_at = "9999-01-01T00:00:00+00:00"
        store.record_run(second)

        runs = store.list_runs()
        assert [r.command for r in runs] == ["fit", "check"]
        assert runs[1].inputs == {"data": "train.csv"}
        assert runs[1].finished_at is not None
        assert (store.base_dir / f"{first.run_id}.manifest.json").exists()
        assert store.list_runs(limit=1)[0].run_id == second.run_id

    def test_missing_output_refused(self, store, tmp_path):
        manifest = RunManifest.start("fit", outputs=[str(tmp_path / "missing.csv")])
        with pytest.raises(SepbayesError, match="missing outputs"):
            store.record_run(manifest)
        assert store.list_runs() == []

    def test_corrupt_index_lines_skipped(self, store):
        store.record_run(RunManifest.start("simulate"))
        with open(store.index_file, "a", encoding="utf-8") as f:
            f.write("{not json\n\n")
        assert len(store.list_runs()) == 1

    def test_versions_recorded(self):
        manifest = RunManifest.start("check")
        assert manifest.run_id.startswith("check-")
        assert {"sepbayes", "numpy", "scipy", "python"} <= set(manifest.versions)


def test_dumps_is_stable():
    text = dumps({"b": 1, "a": [1.5, "é"]})
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["a", "b"]
    assert "é" in text


def test_default_directory_from_settings(monkeypatch, tmp_path):
    from sepbayes.config import reload_config

    monkeypatch.setenv("SEPBAYES_OUTPUT_DIR", str(tmp_path / "elsewhere"))
    reload_config()
    assert RunStore().base_dir == tmp_path / "elsewhere"
