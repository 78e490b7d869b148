import argparse
from pathlib import Path

from .base import BaseCommand, command


def add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, required=True)
    parser.add_argument("--seed", type=int)
    parser.add_argument(
        "--max-particles", help="particle cap, or 'inf' for exact filtering"
    )


@command
class DetectCommand(BaseCommand):
    help = "filter series and write changepoint reports"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_run_flags(parser)
        parser.add_argument("--input", type=Path, action="append", required=True)
        parser.add_argument("--output", type=Path, required=True)

    def run(self, args: argparse.Namespace) -> None:
        self.services.detect_files(
            args.config, args.input, args.output, self.overrides(args)
        )


@command
class RiskCommand(BaseCommand):
    help = "print P(v' mu <= theta) for the current segment"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_run_flags(parser)
        parser.add_argument("--input", type=Path, required=True)

    def run(self, args: argparse.Namespace) -> None:
        risk = self.services.risk_file(args.config, args.input, self.overrides(args))
        print(f"risk = {risk!r}")
