"""sepbayes command line.

Subcommands:
    check     separation kind, solitary separators and existence verdicts
    fit       run a sampler and write draws
    diagnose  posterior summaries, running means and autocorrelations
    predict   out-of-sample probabilities and scores
    simulate  write one of the scenario datasets
    compare   fit the cauchy, t and normal presets and score each on a test set

Exit codes: `check` returns 0 (no separation), 2 (separation, every mean
exists), 3 (some mean does not exist) or 4 (a verdict is unknown); `fit`
returns 3 when it refuses to run. Any error returns 1.
"""

import argparse
import logging
import sys
from pathlib import Path

import pandas as pd

from sepbayes.config import (
    configure_logging,
    get_default_preset,
    get_prior_presets,
    get_sampler_defaults,
)
from sepbayes.dataset import (
    INTERCEPT_NAME,
    Dataset,
    StandardizationRecord,
    add_intercept,
    apply_standardization,
    load_csv,
    standardize,
    write_csv,
)
from sepbayes.diagnostics import acf_frame, running_mean_frame, summarize
from sepbayes.errors import DiagnosticsError, DivergenceError, SepbayesError
from sepbayes.predict import PredictionResult, evaluate, map_estimate, predict_mc, predict_point
from sepbayes.samplers import (
    Draws,
    GibbsConfig,
    Link,
    PriorSpec,
    build_prior,
    gibbs,
    parse_link,
    prior_from_dict,
    rw_metropolis,
)
from sepbayes.separation import SeparationReport, existence_report
from sepbayes.separation.existence import EXIT_MEAN_NOT_EXISTS
from sepbayes.store import RunManifest, RunStore, dumps
from .simulate import Scenario, simulate

logger = logging.getLogger(__name__)

EXIT_ERROR = 1
COMPARED_PRESETS = ("cauchy", "t", "normal")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so they never collide with the `check` verdict codes."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# =============================================================================
# Argument groups
# =============================================================================


def _common_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="Random seed (default from settings)")
    parent.add_argument("--out", default=None, help="Output directory (default SEPBAYES_OUTPUT_DIR)")
    parent.add_argument("--log-level", default=None, help="Logging level (default LOG_LEVEL)")
    return parent


def _data_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--response", default="y", help="Response column name, or 0-based index")
    parent.add_argument("--no-header", action="store_true", help="The CSV has no header row")
    parent.add_argument("--no-intercept", action="store_true", help="Do not add an intercept column")
    parent.add_argument(
        "--no-standardize", action="store_true", help="Keep predictors on their raw scale"
    )
    parent.add_argument(
        "--keep", action="append", default=[], metavar="COLUMN",
        help="Leave this column unstandardized (repeatable)",
    )
    return parent


def _prior_flags(with_preset: bool = True) -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    if with_preset:
        parent.add_argument("--prior", choices=get_prior_presets(), default=None, help="Prior preset")
    parent.add_argument("--link", choices=[k.value for k in Link], default=Link.LOGIT.value)
    parent.add_argument("--df", type=float, default=None, help="Prior degrees of freedom")
    parent.add_argument("--scale", type=float, default=None, help="Scale of non-intercept coefficients")
    parent.add_argument("--scale-intercept", type=float, default=None, help="Scale of the intercept")
    parent.add_argument("--location", type=float, default=None, help="Common prior location")
    parent.add_argument(
        "--sigma-matrix", choices=["identity", "zellner-siow"], default="identity",
        help="Scale matrix of the multivariate prior",
    )
    return parent


def _sampler_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--sampler", choices=["gibbs", "metropolis"], default="gibbs")
    parent.add_argument("--iters", type=int, default=None, help="Total iterations per chain")
    parent.add_argument("--burnin", type=int, default=None, help="Iterations discarded per chain")
    parent.add_argument("--thin", type=int, default=None, help="Keep every k-th draw")
    parent.add_argument("--chains", type=int, default=None, help="Number of chains")
    parent.add_argument("--init", choices=["zeros", "prior-draw"], default=None)
    parent.add_argument("--workers", type=int, default=None, help="Processes used for chains")
    parent.add_argument("--step-scale", type=float, default=None, help="Initial Metropolis step")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common, data, prior, sampler = _common_flags(), _data_flags(), _prior_flags(), _sampler_flags()

    parser = _Parser(
        prog="sepbayes", description="Separation diagnostics and MCMC for binary regression"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "check", parents=[common, data, prior], help="Detect separation and decide existence"
    )
    p.add_argument("data", help="Training CSV")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("fit", parents=[common, data, prior, sampler], help="Sample the posterior")
    p.add_argument("data", help="Training CSV")
    p.add_argument("--force", action="store_true", help="Fit even when a posterior mean does not exist")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("diagnose", parents=[common], help="Summarize a draws file")
    p.add_argument("draws", help="Draws CSV written by `fit`")
    p.add_argument("--max-lag", type=int, default=None, help="Largest lag in acf.csv")
    p.set_defaults(handler=cmd_diagnose)

    p = sub.add_parser("predict", parents=[common], help="Score a test set")
    p.add_argument("draws", help="Draws CSV written by `fit`")
    p.add_argument("test", help="Test CSV")
    p.add_argument(
        "--record", default=None, help="Standardization record JSON (default: draws sidecar)"
    )
    p.add_argument("--response", default="y", help="Response column name, or 0-based index")
    p.add_argument("--no-header", action="store_true", help="The CSV has no header row")
    p.add_argument("--point-estimate", choices=["mcmc", "map"], default="mcmc")
    p.add_argument("--train", default=None, help="Training CSV (required for --point-estimate map)")
    p.add_argument("--threshold", type=float, default=None, help="Classification threshold")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("simulate", parents=[common], help="Write a scenario dataset")
    p.add_argument("scenario", choices=[s.value for s in Scenario])
    p.add_argument("--n", type=int, default=30, help="Number of observations")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser(
        "compare", parents=[common, data, _prior_flags(with_preset=False), sampler],
        help="Compare the cauchy, t and normal presets out of sample",
    )
    p.add_argument("data", help="Training CSV")
    p.add_argument("test", help="Test CSV")
    p.add_argument("--threshold", type=float, default=None, help="Classification threshold")
    p.set_defaults(handler=cmd_compare)

    return parser


# =============================================================================
# Shared steps
# =============================================================================


def _load_training(args: argparse.Namespace, path: str | None = None) -> Dataset:
    d = load_csv(path or args.data, response=args.response, header=not args.no_header)
    if not args.no_intercept:
        d = add_intercept(d)
    if not args.no_standardize:
        d, _ = standardize(d, keep=args.keep)
    elif args.keep:
        logger.warning("--keep has no effect together with --no-standardize")
    return d


def _build_prior(args: argparse.Namespace, d: Dataset, preset: str | None = None) -> PriorSpec:
    return build_prior(
        preset or getattr(args, "prior", None) or get_default_preset(),
        d,
        df=args.df,
        scale=args.scale,
        scale_intercept=args.scale_intercept,
        location=args.location,
        sigma_matrix=args.sigma_matrix,
    )


def _sampler_config(args: argparse.Namespace) -> GibbsConfig:
    return GibbsConfig.from_settings(
        iterations=args.iters,
        burnin=args.burnin,
        thin=args.thin,
        chains=args.chains,
        seed=args.seed,
        init=args.init,
    )


def _check_sampler_link(args: argparse.Namespace) -> str | None:
    if args.sampler == "gibbs" and parse_link(args.link) is not Link.LOGIT:
        return (
            f"The Gibbs sampler supports the logit link only; "
            f"use --sampler metropolis for the {args.link} link"
        )
    return None


def _sample(args: argparse.Namespace, d: Dataset, prior: PriorSpec, cfg: GibbsConfig) -> Draws:
    if args.sampler == "gibbs":
        return gibbs(d, prior, cfg, workers=args.workers)
    return rw_metropolis(d, prior, args.link, cfg, step_scale=args.step_scale, workers=args.workers)


def _print_verdicts(report: SeparationReport) -> None:
    for v in report.existence:
        print(f"  {v.coefficient}: {v.verdict.value} ({v.basis})", file=sys.stderr)


def _write_divergence(store: RunStore, error: DivergenceError) -> None:
    path = store.write_json("divergence.json", error.snapshot)
    print(f"error: {error}; state written to {path}", file=sys.stderr)


def _coefficient_table(draws: Draws) -> pd.DataFrame:
    summary = summarize(draws)
    return pd.DataFrame(
        [
            {"coef": c.name, "mean": c.mean, "sd": c.sd, "ess": c.ess, "mcse": c.mcse}
            for c in summary.coefficients
        ]
    ).set_index("coef")


# =============================================================================
# Subcommands
# =============================================================================


def cmd_check(args: argparse.Namespace) -> int:
    d = _load_training(args)
    prior = _build_prior(args, d)
    report = existence_report(d, prior, args.link)
    payload = report.to_dict()
    sys.stdout.write(dumps(payload))

    if args.out is not None:
        store = RunStore(args.out)
        manifest = RunManifest.start(
            "check",
            inputs={"data": str(args.data)},
            config={
                "prior": payload["prior"],
                "link": payload["link"],
                "standardize": not args.no_standardize,
            },
        )
        manifest.outputs.append(str(store.write_json("report.json", payload)))
        store.record_run(manifest)
    return report.exit_code()


def cmd_fit(args: argparse.Namespace) -> int:
    problem = _check_sampler_link(args)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_ERROR

    d = _load_training(args)
    prior = _build_prior(args, d)
    report = existence_report(d, prior, args.link)
    if report.has_not_exists:
        if not args.force:
            print(
                "Refusing to fit: some posterior means do not exist (use --force to override)",
                file=sys.stderr,
            )
            _print_verdicts(report)
            return EXIT_MEAN_NOT_EXISTS
        logger.warning(
            f"Fitting despite non-existent posterior means for {', '.join(report.not_exists_columns)}"
        )

    cfg = _sampler_config(args)
    store = RunStore(args.out)
    manifest = RunManifest.start(
        "fit",
        inputs={"data": str(args.data)},
        config={"sampler": args.sampler, "link": args.link, "prior": prior.to_dict(), **cfg.to_dict()},
        seed=cfg.seed,
    )
    try:
        draws = _sample(args, d, prior, cfg)
    except DivergenceError as e:
        _write_divergence(store, e)
        return EXIT_ERROR

    draws = draws.with_metadata(existence=[v.to_dict() for v in report.existence])
    csv_path, sidecar = store.write_draws(draws)
    report_path = store.write_json("report.json", report.to_dict())
    manifest.outputs.extend([str(csv_path), str(sidecar), str(report_path)])
    store.record_run(manifest)

    try:
        print(_coefficient_table(draws).to_string(float_format=lambda v: f"{v:.4g}"))
    except DiagnosticsError as e:
        logger.warning(f"No summary table: {e}")
    print(f"\nDraws written to {csv_path}")
    return 0


def cmd_diagnose(args: argparse.Namespace) -> int:
    draws = RunStore.read_draws(args.draws)
    summary = summarize(draws)
    store = RunStore(args.out if args.out is not None else Path(args.draws).parent)

    manifest = RunManifest.start(
        "diagnose", inputs={"draws": str(args.draws)}, config={"max_lag": args.max_lag}
    )
    manifest.outputs.extend(
        [
            str(store.write_json("summary.json", summary.to_dict())),
            str(store.write_frame("running_means.csv", running_mean_frame(draws))),
            str(store.write_frame("acf.csv", acf_frame(draws, args.max_lag))),
        ]
    )
    store.record_run(manifest)

    for c in summary.coefficients:
        note = f"  [{c.note}]" if c.note else ""
        print(
            f"{c.name:>16}  mean {c.mean: .4g}  sd {c.sd:.4g}  "
            f"ESS {c.ess:.1f}  MC-SE {c.mcse:.3g}{note}"
        )
    return 0


def _load_record(args: argparse.Namespace, draws: Draws) -> StandardizationRecord | None:
    if args.record is None:
        return draws.standardization
    payload = RunStore.read_json(args.record)
    payload = payload.get("standardization", payload)
    return StandardizationRecord.from_dict(payload) if payload else None


def _load_like(
    path: str, args: argparse.Namespace, names: tuple[str, ...], record: StandardizationRecord | None
) -> Dataset:
    """Load a CSV onto the fitted design: intercept when the fit had one, then the training record."""
    d = load_csv(path, response=args.response, header=not args.no_header)
    if INTERCEPT_NAME in names:
        d = add_intercept(d)
    if record is not None:
        d = apply_standardization(d, record)
    return d


def cmd_predict(args: argparse.Namespace) -> int:
    draws = RunStore.read_draws(args.draws)
    record = _load_record(args, draws)
    test = _load_like(args.test, args, draws.names, record)

    if args.point_estimate == "map":
        if args.train is None:
            print("error: --point-estimate map needs --train", file=sys.stderr)
            return EXIT_ERROR
        if not draws.prior:
            print("error: the draws file has no prior in its sidecar", file=sys.stderr)
            return EXIT_ERROR
        train = _load_like(args.train, args, draws.names, record)
        mode = map_estimate(train, prior_from_dict(draws.prior), draws.link)
        probs = predict_point(mode.beta, test, draws.link)
        result = evaluate(probs, test.y, args.threshold, label="MAP")
    else:
        result = evaluate(predict_mc(draws, test), test.y, args.threshold, label="MCMC")

    store = RunStore(args.out if args.out is not None else Path(args.draws).parent)
    manifest = RunManifest.start(
        "predict",
        inputs={"draws": str(args.draws), "test": str(args.test)},
        config={"point_estimate": args.point_estimate, "threshold": result.threshold},
    )
    manifest.outputs.extend(
        [
            str(store.write_frame("probabilities.csv", result.to_frame())),
            str(store.write_json("metrics.json", result.to_dict())),
        ]
    )
    store.record_run(manifest)
    sys.stdout.write(dumps(result.to_dict()))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else int(get_sampler_defaults()["seed"])
    d = simulate(args.scenario, n=args.n, seed=seed)
    if args.out is None:
        sys.stdout.write(write_csv(d))
        return 0

    store = RunStore(args.out)
    path = store.write_text(f"{args.scenario}.csv", write_csv(d))
    manifest = RunManifest.start(
        "simulate", config={"scenario": args.scenario, "n": args.n}, seed=seed, outputs=[str(path)]
    )
    store.record_run(manifest)
    print(path)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    problem = _check_sampler_link(args)
    if problem:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_ERROR

    train = _load_training(args)
    test = _load_like(args.test, args, train.names, train.standardization)
    cfg = _sampler_config(args)
    store = RunStore(args.out)
    manifest = RunManifest.start(
        "compare",
        inputs={"data": str(args.data), "test": str(args.test)},
        config={
            "sampler": args.sampler,
            "link": args.link,
            "presets": list(COMPARED_PRESETS),
            **cfg.to_dict(),
        },
        seed=cfg.seed,
    )

    rows = []
    for preset in COMPARED_PRESETS:
        prior = _build_prior(args, train, preset)
        report = existence_report(train, prior, args.link)
        if report.has_not_exists:
            logger.warning(
                f"{preset}: posterior means do not exist for {', '.join(report.not_exists_columns)}"
            )
        try:
            draws = _sample(args, train, prior, cfg)
        except DivergenceError as e:
            _write_divergence(store, e)
            return EXIT_ERROR
        draws = draws.with_metadata(existence=[v.to_dict() for v in report.existence])
        csv_path, sidecar = store.write_draws(draws, stem=f"draws-{preset}")
        manifest.outputs.extend([str(csv_path), str(sidecar)])

        mode = map_estimate(train, prior, args.link)
        results: list[PredictionResult] = [
            evaluate(predict_mc(draws, test), test.y, args.threshold, label="MCMC"),
            evaluate(predict_point(mode.beta, test, args.link), test.y, args.threshold, label="MAP"),
        ]
        for result in results:
            rows.append(
                {
                    "prior": preset,
                    "method": result.label,
                    "misclassification": result.misclassification,
                    "brier": result.brier,
                    "all_means_exist": not report.has_not_exists,
                }
            )

    manifest.outputs.append(str(store.write_json("comparison.json", {"rows": rows})))
    store.record_run(manifest)
    table = pd.DataFrame(rows).set_index(["prior", "method"])
    print(table.to_string(float_format=lambda v: f"{v:.3f}"))
    return 0


# =============================================================================
# Entry point
# =============================================================================


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except (SepbayesError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
