"""Command-line interface (`sepbayes` console script)."""

from sepbayes.cli.main import build_parser, main
from sepbayes.cli.simulate import Scenario, simulate

__all__ = ["build_parser", "main", "Scenario", "simulate"]
