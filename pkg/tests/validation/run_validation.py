#!/usr/bin/env python3
"""
Real-Data Validation

Reproduces the published SPECT and Pima results through the sepbayes CLI.
Each YAML case runs a sequence of commands into a shared run directory and
then checks values in the JSON files they wrote.

Usage:
    # Run everything whose data paths are set
    SEPBAYES_SPECT_TRAIN=SPECT.train SEPBAYES_SPECT_TEST=SPECT.test python run_validation.py

    # One category
    python run_validation.py --category pima

    # Keep run directories for inspection
    python run_validation.py --workdir ./validation-runs -v

    # List available tests
    python run_validation.py --list
"""

import argparse
import json
import os
import re
import sys
import tempfile
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any

import yaml

# Add parent to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from sepbayes.cli.main import main as sepbayes_main

HERE = Path(__file__).parent
TEST_DIR = HERE / "test-cases"

# Commands that load a data file and so take --response / --no-header
DATA_COMMANDS = {"check", "fit", "predict", "compare"}


class TestStatus(Enum):
    """Status of a test."""

    PASSED = "PASSED"
    FAILED = "FAILED"
    SKIPPED = "SKIPPED"
    ERROR = "ERROR"


@dataclass
class TestResult:
    """Result of a single test."""

    name: str
    status: TestStatus
    message: str
    duration_ms: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)


@dataclass
class DatasetSource:
    """Where a dataset lives and how its CSV is laid out."""

    name: str
    train_env: str
    test_env: str
    header: bool = True
    response: str = "y"

    @property
    def train(self) -> str | None:
        return os.environ.get(self.train_env) or None

    @property
    def test(self) -> str | None:
        return os.environ.get(self.test_env) or None

    @property
    def available(self) -> bool:
        return self.train is not None and self.test is not None

    def format_args(self) -> list[str]:
        args = ["--response", self.response]
        if not self.header:
            args.append("--no-header")
        return args


@dataclass
class Step:
    """One CLI invocation."""

    command: str
    args: list[str]
    exit_code: list[int]


@dataclass
class TestCase:
    """A single test case loaded from YAML."""

    name: str
    description: str
    category: str
    dataset: str
    steps: list[Step] = field(default_factory=list)
    expect: list[dict[str, Any]] = field(default_factory=list)


@dataclass
class ValidationConfig:
    """Configuration for the validation runner."""

    datasets: dict[str, DatasetSource] = field(default_factory=dict)
    verbose: bool = False
    fail_fast: bool = False
    categories: list[str] = field(default_factory=list)
    workdir: str = ""

    @classmethod
    def from_yaml(cls, path: Path) -> "ValidationConfig":
        """Load config from YAML file."""
        with open(path) as f:
            data = yaml.safe_load(f)

        tests = data.get("tests", {})
        datasets = {
            name: DatasetSource(
                name=name,
                train_env=entry["train_env"],
                test_env=entry["test_env"],
                header=entry.get("header", True),
                response=str(entry.get("response", "y")),
            )
            for name, entry in data.get("datasets", {}).items()
        }
        return cls(
            datasets=datasets,
            verbose=tests.get("verbose", False),
            fail_fast=tests.get("fail_fast", False),
            categories=tests.get("categories") or [],
            workdir=tests.get("workdir") or "",
        )


# =============================================================================
# JSON paths
# =============================================================================

_TOKEN = re.compile(r"\[[^\]]*\]|[^.\[\]]+")


def resolve(data: Any, path: str) -> Any:
    """Look up a dotted path in parsed JSON.

    `rows[prior=t,method=MCMC]` selects the single list entry whose fields
    match; `[*]` maps the rest of the path over a list (after a filter it
    keeps every match).
    """
    return _walk(data, _TOKEN.findall(path), path)


def _walk(node: Any, tokens: list[str], path: str) -> Any:
    if not tokens:
        return node
    token, rest = tokens[0], tokens[1:]

    if token == "[*]":
        return [_walk(item, rest, path) for item in node]

    if token.startswith("["):
        conditions = dict(pair.split("=", 1) for pair in token[1:-1].split(","))
        matches = [
            item
            for item in node
            if all(str(item.get(k)) == v for k, v in conditions.items())
        ]
        if rest and rest[0] == "[*]":
            return [_walk(item, rest[1:], path) for item in matches]
        if len(matches) != 1:
            raise KeyError(f"{token} matched {len(matches)} entries in '{path}'")
        return _walk(matches[0], rest, path)

    if isinstance(node, list):
        return _walk(node[int(token)], rest, path)
    if token not in node:
        raise KeyError(f"'{token}' not found in '{path}'")
    return _walk(node[token], rest, path)


# =============================================================================
# Runner
# =============================================================================


class ValidationRunner:
    """Runs YAML test cases against the sepbayes CLI."""

    def __init__(self, config: ValidationConfig):
        self.config = config
        self.results: list[TestResult] = []

    def _log(self, message: str) -> None:
        """Log message if verbose mode enabled."""
        if self.config.verbose:
            print(f"  [DEBUG] {message}")

    def _workdir(self, test: TestCase) -> Path:
        root = Path(self.config.workdir) if self.config.workdir else Path(tempfile.mkdtemp())
        out = root / test.name
        out.mkdir(parents=True, exist_ok=True)
        return out

    def _argv(self, step: Step, source: DatasetSource, out: Path) -> list[str]:
        values = {"train": source.train, "test": source.test, "out": str(out)}
        argv = [step.command] + [arg.format(**values) for arg in step.args]
        if step.command in DATA_COMMANDS:
            argv += source.format_args()
        return argv

    def _check(self, out: Path, expectation: dict[str, Any]) -> str | None:
        """Return a failure message, or None when the expectation holds."""
        with open(out / expectation["file"]) as f:
            value = resolve(json.load(f), expectation["path"])
        where = f"{expectation['file']}:{expectation['path']} = {value!r}"
        tol = float(expectation.get("tolerance", 0.0))

        if "equals" in expectation and value != expectation["equals"]:
            return f"{where}, expected {expectation['equals']!r}"
        if "each_equals" in expectation:
            if any(v != expectation["each_equals"] for v in value):
                return f"{where}, expected every entry {expectation['each_equals']!r}"
        if "approx" in expectation and abs(value - expectation["approx"]) > tol:
            return f"{where}, expected {expectation['approx']} +/- {tol}"
        if "each_approx" in expectation:
            if not value or any(abs(v - expectation["each_approx"]) > tol for v in value):
                return f"{where}, expected every entry {expectation['each_approx']} +/- {tol}"
        if "min" in expectation and value < expectation["min"]:
            return f"{where}, below {expectation['min']}"
        if "max" in expectation and value > expectation["max"]:
            return f"{where}, above {expectation['max']}"
        if "exceeds" in expectation:
            # same sign, larger magnitude
            ref_file, ref_path = expectation["exceeds"].split(":", 1)
            with open(out / ref_file) as f:
                ref = resolve(json.load(f), ref_path)
            if value * ref <= 0 or abs(value) <= abs(ref):
                return f"{where}, expected beyond {ref!r} ({expectation['exceeds']})"
        return None

    def run_test(self, test: TestCase) -> TestResult:
        """Run a single test case."""
        start = time.time()

        source = self.config.datasets.get(test.dataset)
        if source is None:
            return TestResult(
                name=test.name,
                status=TestStatus.ERROR,
                message=f"Unknown dataset: {test.dataset}",
            )
        if not source.available:
            return TestResult(
                name=test.name,
                status=TestStatus.SKIPPED,
                message=f"Set {source.train_env} and {source.test_env} to run",
            )

        out = self._workdir(test)
        try:
            for step in test.steps:
                argv = self._argv(step, source, out)
                self._log(f"sepbayes {' '.join(argv)}")
                code = sepbayes_main(argv)
                if code not in step.exit_code:
                    return TestResult(
                        name=test.name,
                        status=TestStatus.FAILED,
                        message=f"`{step.command}` exited {code}, expected {step.exit_code}",
                        duration_ms=(time.time() - start) * 1000,
                        details={"argv": argv, "workdir": str(out)},
                    )

            failures = [m for m in (self._check(out, e) for e in test.expect) if m]
            if failures:
                return TestResult(
                    name=test.name,
                    status=TestStatus.FAILED,
                    message=failures[0],
                    duration_ms=(time.time() - start) * 1000,
                    details={"failures": failures, "workdir": str(out)},
                )

            return TestResult(
                name=test.name,
                status=TestStatus.PASSED,
                message=test.description,
                duration_ms=(time.time() - start) * 1000,
            )

        except Exception as e:
            return TestResult(
                name=test.name,
                status=TestStatus.ERROR,
                message=str(e),
                duration_ms=(time.time() - start) * 1000,
                details={"workdir": str(out)},
            )

    def run_all_tests(self, test_cases: list[TestCase]) -> list[TestResult]:
        """Run all test cases grouped by category."""
        print("\n" + "=" * 60)
        print("sepbayes Real-Data Validation")
        print("=" * 60)
        for source in self.config.datasets.values():
            state = "available" if source.available else "not set"
            print(f"{source.name}: {state} ({source.train_env}, {source.test_env})")
        print("=" * 60)

        if self.config.categories:
            test_cases = [t for t in test_cases if t.category in self.config.categories]
            print(f"Filtered to {len(test_cases)} tests (categories: {self.config.categories})")

        categories: dict[str, list[TestCase]] = {}
        for test in test_cases:
            categories.setdefault(test.category, []).append(test)

        stop = False
        for category, tests in categories.items():
            print(f"\n[{category}]")
            for test in tests:
                result = self.run_test(test)
                self.results.append(result)

                icon = {
                    TestStatus.PASSED: "\033[32m✓\033[0m",
                    TestStatus.FAILED: "\033[31m✗\033[0m",
                    TestStatus.SKIPPED: "\033[33m○\033[0m",
                    TestStatus.ERROR: "\033[31m!\033[0m",
                }.get(result.status, "?")
                print(f"  {icon} {result.name}: {result.message}")

                if self.config.verbose and result.details:
                    for key, value in result.details.items():
                        print(f"      {key}: {value}")

                if self.config.fail_fast and result.status in (
                    TestStatus.FAILED,
                    TestStatus.ERROR,
                ):
                    print("\n  [Stopping due to fail_fast]")
                    stop = True
                    break
            if stop:
                break

        self._print_summary()
        return self.results

    def _print_summary(self) -> None:
        """Print test summary."""
        print("\n" + "=" * 60)
        print("Summary")
        print("=" * 60)

        total = len(self.results)
        counts = {s: sum(1 for r in self.results if r.status == s) for s in TestStatus}
        total_time = sum(r.duration_ms for r in self.results)

        print(f"  Passed:  {counts[TestStatus.PASSED]}/{total}")
        print(f"  Failed:  {counts[TestStatus.FAILED]}/{total}")
        print(f"  Skipped: {counts[TestStatus.SKIPPED]}/{total}")
        print(f"  Errors:  {counts[TestStatus.ERROR]}/{total}")
        print(f"  Time:    {total_time / 1000:.1f}s")

        if counts[TestStatus.FAILED] or counts[TestStatus.ERROR]:
            print("\n  \033[31mStatus: FAILED\033[0m")
            print("\n  Failed tests:")
            for r in self.results:
                if r.status in (TestStatus.FAILED, TestStatus.ERROR):
                    print(f"    - {r.name}: {r.message}")
        else:
            print("\n  \033[32mStatus: PASSED\033[0m")


def load_test_cases(test_dir: Path = TEST_DIR) -> list[TestCase]:
    """Load every test case under test-cases/."""
    test_cases = []
    for yaml_file in sorted(test_dir.glob("*.yaml")):
        with open(yaml_file) as f:
            data = yaml.safe_load(f)

        category = data.get("category", yaml_file.stem)
        dataset = data.get("dataset", category)
        for test_data in data.get("tests", []):
            steps = []
            for s in test_data.get("steps", []):
                codes = s.get("exit_code", 0)
                steps.append(
                    Step(
                        command=s["command"],
                        args=[str(a) for a in s.get("args", [])],
                        exit_code=codes if isinstance(codes, list) else [codes],
                    )
                )
            test_cases.append(
                TestCase(
                    name=test_data.get("name", "unnamed"),
                    description=test_data.get("description", ""),
                    category=category,
                    dataset=test_data.get("dataset", dataset),
                    steps=steps,
                    expect=test_data.get("expect", []),
                )
            )
    return test_cases


def list_tests(test_dir: Path = TEST_DIR) -> None:
    """List available tests."""
    print("Available validation tests:")
    print("-" * 40)

    for yaml_file in sorted(test_dir.glob("*.yaml")):
        with open(yaml_file) as f:
            data = yaml.safe_load(f)

        category = data.get("category", yaml_file.stem)
        print(f"\n[{category}] {data.get('description', '')}")
        for test in data.get("tests", []):
            print(f"  - {test.get('name')}: {test.get('description', '')}")


def parse_args() -> argparse.Namespace:
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="sepbayes Real-Data Validation",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=HERE / "config.yaml",
        help="Path to config file",
    )
    parser.add_argument(
        "--category",
        action="append",
        dest="categories",
        help="Test category to run (can be repeated)",
    )
    parser.add_argument(
        "--workdir",
        type=str,
        help="Directory for run outputs (default: a temporary directory)",
    )
    parser.add_argument(
        "--fail-fast",
        action="store_true",
        help="Stop on first failure",
    )
    parser.add_argument(
        "--list",
        action="store_true",
        help="List available tests",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Verbose output",
    )
    return parser.parse_args()


def main() -> int:
    """Main entry point."""
    args = parse_args()

    if args.list:
        list_tests()
        return 0

    config = ValidationConfig.from_yaml(args.config)
    if args.verbose:
        config.verbose = True
    if args.fail_fast:
        config.fail_fast = True
    if args.categories:
        config.categories = args.categories
    if args.workdir:
        config.workdir = args.workdir

    runner = ValidationRunner(config)
    results = runner.run_all_tests(load_test_cases())

    failed = sum(1 for r in results if r.status in (TestStatus.FAILED, TestStatus.ERROR))
    return 1 if failed > 0 else 0


if __name__ == "__main__":
    sys.exit(main())
