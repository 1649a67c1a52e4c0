"""End-to-end tests of the sepbayes command line."""

import json

import numpy as np
import pandas as pd
import pytest

from sepbayes.cli import build_parser, main


class TestParser:
    def test_usage_errors_exit_one(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 1
        assert "invalid choice" in capsys.readouterr().err

    def test_help_lists_subcommands(self):
        help_text = build_parser().format_help()
        for command in ("check", "fit", "diagnose", "predict", "simulate", "compare"):
            assert command in help_text


class TestCheck:
    def test_toy_centred_exit_two(self, run_cli, toy_csv):
        code, out, _ = run_cli("check", toy_csv)
        assert code == 2
        report = json.loads(out)
        assert report["kind"] == "quasicomplete"
        assert {v["verdict"] for v in report["existence"]} == {"exists"}

    def test_toy_uncentred_exit_three(self, run_cli, toy_csv):
        code, out, _ = run_cli("check", toy_csv, "--no-standardize")
        assert code == 3
        verdicts = {v["coef"]: v["verdict"] for v in json.loads(out)["existence"]}
        assert verdicts == {"(Intercept)": "exists", "x": "not-exists"}

    def test_overlap_exit_zero(self, run_cli, overlap_csv):
        code, out, _ = run_cli("check", overlap_csv)
        assert code == 0
        assert json.loads(out)["kind"] == "none"

    def test_scenarios(self, run_cli, scenario_csv):
        assert run_cli("check", scenario_csv("solitary"))[0] == 3
        assert run_cli("check", scenario_csv("no-solitary"))[0] == 2
        assert run_cli("check", scenario_csv("no-solitary"), "--prior", "mvt")[0] == 3
        assert run_cli("check", scenario_csv("no-solitary"), "--prior", "normal")[0] == 2

    def test_robit_unknown_without_solitary(self, run_cli, scenario_csv):
        code, out, _ = run_cli("check", scenario_csv("no-solitary"), "--link", "robit")
        assert code == 4
        assert {v["verdict"] for v in json.loads(out)["existence"]} == {"unknown"}

    def test_out_writes_report_and_manifest(self, run_cli, toy_csv, tmp_path, read_json):
        out_dir = tmp_path / "check"
        code, stdout, _ = run_cli("check", toy_csv, "--out", out_dir)
        assert code == 2
        assert read_json(out_dir / "report.json") == json.loads(stdout)
        index = (out_dir / "runs.jsonl").read_text(encoding="utf-8").splitlines()
        assert json.loads(index[0])["command"] == "check"

    def test_headerless_by_index(self, run_cli, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("0.5,0\n1.5,1\n-0.3,1\n0.2,0\n-1.0,0\n0.9,1\n", encoding="utf-8")
        code, out, _ = run_cli("check", path, "--no-header", "--response", "1")
        assert code == 0
        assert [v["coef"] for v in json.loads(out)["existence"]] == ["(Intercept)", "V1"]

    def test_bad_data_exit_one(self, run_cli, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("y,x\n0,1\n2,3\n", encoding="utf-8")
        code, _, err = run_cli("check", path)
        assert code == 1
        assert "error:" in err and "not 0 or 1" in err

    def test_missing_file_exit_one(self, run_cli, tmp_path):
        code, _, err = run_cli("check", tmp_path / "nope.csv")
        assert code == 1
        assert "not found" in err


class TestFit:
    def test_gibbs_rejects_probit(self, run_cli, overlap_csv, tmp_path):
        code, _, err = run_cli("fit", overlap_csv, "--link", "probit", "--out", tmp_path / "f")
        assert code == 1
        assert "--sampler metropolis" in err
        assert not (tmp_path / "f" / "draws.csv").exists()

    def test_refuses_when_mean_does_not_exist(self, run_cli, scenario_csv, tmp_path, fast_sampler):
        out_dir = tmp_path / "refused"
        code, _, err = run_cli("fit", scenario_csv("solitary"), "--out", out_dir)
        assert code == 3
        assert "Refusing to fit" in err
        assert "x2: not-exists" in err
        assert not (out_dir / "draws.csv").exists()

    def test_force_overrides(self, run_cli, scenario_csv, tmp_path, fast_sampler, read_json):
        out_dir = tmp_path / "forced"
        code, out, _ = run_cli("fit", scenario_csv("solitary"), "--force", "--out", out_dir)
        assert code == 0
        assert "Draws written to" in out
        sidecar = read_json(out_dir / "draws.json")
        assert sidecar["existence"][1]["verdict"] == "not-exists"
        assert sidecar["config"]["iterations"] == 400

    def test_identical_flags_identical_bytes(self, run_cli, overlap_csv, tmp_path):
        flags = ["--iters", "300", "--burnin", "50", "--chains", "2", "--seed", "5"]
        assert run_cli("fit", overlap_csv, *flags, "--out", tmp_path / "a")[0] == 0
        assert run_cli("fit", overlap_csv, *flags, "--out", tmp_path / "b")[0] == 0
        first = (tmp_path / "a" / "draws.csv").read_bytes()
        assert first == (tmp_path / "b" / "draws.csv").read_bytes()
        frame = pd.read_csv(tmp_path / "a" / "draws.csv")
        assert list(frame.columns) == ["(Intercept)", "x", "chain"]
        assert len(frame) == 500

    def test_metropolis_probit(self, run_cli, overlap_csv, tmp_path, read_json):
        out_dir = tmp_path / "mh"
        code, _, _ = run_cli(
            "fit", overlap_csv, "--sampler", "metropolis", "--link", "probit",
            "--prior", "t", "--iters", "2000", "--burnin", "500", "--out", out_dir,
        )
        assert code == 0
        sidecar = read_json(out_dir / "draws.json")
        assert sidecar["link"] == "probit"
        assert 0.0 < sidecar["acceptance"]["0"] < 1.0
        assert sidecar["standardization"]["columns"][1]["name"] == "x"

    def test_zellner_siow_prior(self, run_cli, overlap_csv, tmp_path, read_json):
        out_dir = tmp_path / "zs"
        code, _, _ = run_cli(
            "fit", overlap_csv, "--prior", "mvt", "--sigma-matrix", "zellner-siow",
            "--iters", "300", "--burnin", "50", "--out", out_dir,
        )
        assert code == 0
        sidecar = read_json(out_dir / "draws.json")
        assert sidecar["prior"]["family"] == "multivariate-t"
        matrix = np.asarray(sidecar["prior"]["scale_matrix"])
        assert matrix.shape == (2, 2)
        frame = pd.read_csv(out_dir / "draws.csv")
        assert len(frame) == 250
        assert np.all(np.isfinite(frame[["(Intercept)", "x"]].to_numpy()))

    def test_divergence_snapshot(self, run_cli, overlap_csv, tmp_path, monkeypatch, read_json):
        from sepbayes.config import reload_config

        monkeypatch.setenv("SEPBAYES_DIVERGENCE_BOUND", "0.01")
        reload_config()
        out_dir = tmp_path / "diverged"
        code, _, err = run_cli(
            "fit", overlap_csv, "--sampler", "metropolis", "--iters", "200", "--burnin", "0",
            "--step-scale", "2.0", "--out", out_dir,
        )
        assert code == 1
        assert "divergence.json" in err
        snapshot = read_json(out_dir / "divergence.json")
        assert snapshot["chain"] == 0
        assert len(snapshot["beta"]) == 2


class TestDiagnoseAndPredict:
    @pytest.fixture
    def fitted(self, run_cli, overlap_csv, tmp_path):
        out_dir = tmp_path / "fit"
        code, _, _ = run_cli(
            "fit", overlap_csv, "--prior", "t", "--iters", "600", "--burnin", "100",
            "--chains", "2", "--out", out_dir,
        )
        assert code == 0
        return out_dir

    def test_diagnose_outputs(self, run_cli, fitted, read_json):
        code, out, _ = run_cli("diagnose", fitted / "draws.csv", "--max-lag", "20")
        assert code == 0
        assert "ESS" in out
        summary = read_json(fitted / "summary.json")
        assert summary["n_draws"] == 1000
        assert len(summary["per_chain"]) == 2
        acf = pd.read_csv(fitted / "acf.csv")
        assert acf["lag"].max() == 20
        means = pd.read_csv(fitted / "running_means.csv")
        assert len(means) == 1000

    def test_predict_mcmc(self, run_cli, fitted, heldout_csv, read_json):
        code, out, _ = run_cli("predict", fitted / "draws.csv", heldout_csv)
        assert code == 0
        metrics = json.loads(out)
        assert metrics["label"] == "MCMC" and metrics["n_test"] == 15
        assert 0.0 <= metrics["brier"] <= 1.0
        assert read_json(fitted / "metrics.json") == metrics
        probs = pd.read_csv(fitted / "probabilities.csv")
        assert len(probs) == 15

    def test_predict_map(self, run_cli, fitted, heldout_csv, overlap_csv):
        code, out, _ = run_cli(
            "predict", fitted / "draws.csv", heldout_csv, "--point-estimate", "map",
            "--train", overlap_csv, "--out", fitted / "map",
        )
        assert code == 0
        assert json.loads(out)["label"] == "MAP"

    def test_predict_map_needs_train(self, run_cli, fitted, heldout_csv):
        code, _, err = run_cli("predict", fitted / "draws.csv", heldout_csv, "--point-estimate", "map")
        assert code == 1
        assert "--train" in err

    def test_predict_with_explicit_record(self, run_cli, fitted, heldout_csv):
        _, implicit, _ = run_cli("predict", fitted / "draws.csv", heldout_csv)
        code, explicit, _ = run_cli(
            "predict", fitted / "draws.csv", heldout_csv, "--record", fitted / "draws.json",
            "--out", fitted / "explicit",
        )
        assert code == 0
        assert json.loads(explicit) == json.loads(implicit)

    def test_predict_with_missing_record(self, run_cli, fitted, heldout_csv, tmp_path):
        code, _, err = run_cli(
            "predict", fitted / "draws.csv", heldout_csv, "--record", tmp_path / "absent.json"
        )
        assert code == 1
        assert "not found" in err

    def test_no_intercept_design_overlaps(self, run_cli, toy_csv):
        code, out, _ = run_cli("check", toy_csv, "--no-intercept")
        assert code == 0
        assert [v["coef"] for v in json.loads(out)["existence"]] == ["x"]

    def test_diagnose_missing_draws(self, run_cli, tmp_path):
        code, _, err = run_cli("diagnose", tmp_path / "none.csv")
        assert code == 1
        assert "not found" in err


class TestSimulate:
    def test_stdout_is_reproducible(self, run_cli):
        _, first, _ = run_cli("simulate", "no-solitary", "--n", "30", "--seed", "3")
        _, second, _ = run_cli("simulate", "no-solitary", "--n", "30", "--seed", "3")
        assert first == second
        assert first.splitlines()[0] == "y,x2"
        assert len(first.splitlines()) == 31

    def test_out_writes_file(self, run_cli, tmp_path):
        code, out, _ = run_cli("simulate", "infection", "--n", "24", "--out", tmp_path / "sim")
        assert code == 0
        path = tmp_path / "sim" / "infection.csv"
        assert out.strip() == str(path)
        assert path.read_text().splitlines()[0] == "y,age,gender,history"

    def test_toy_needs_multiple_of_four(self, run_cli):
        code, _, err = run_cli("simulate", "toy", "--n", "30")
        assert code == 1
        assert "divisible by 4" in err


class TestCompare:
    def test_table(self, run_cli, overlap_csv, heldout_csv, tmp_path, read_json):
        out_dir = tmp_path / "cmp"
        code, out, _ = run_cli(
            "compare", overlap_csv, heldout_csv, "--iters", "400", "--burnin", "100", "--out", out_dir
        )
        assert code == 0
        rows = read_json(out_dir / "comparison.json")["rows"]
        assert [(r["prior"], r["method"]) for r in rows] == [
            ("cauchy", "MCMC"),
            ("cauchy", "MAP"),
            ("t", "MCMC"),
            ("t", "MAP"),
            ("normal", "MCMC"),
            ("normal", "MAP"),
        ]
        assert all(r["all_means_exist"] for r in rows)
        for preset in ("cauchy", "t", "normal"):
            assert (out_dir / f"draws-{preset}.csv").exists()
        assert "misclassification" in out
