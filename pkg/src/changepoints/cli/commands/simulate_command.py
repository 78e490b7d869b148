import argparse
from pathlib import Path

from .base import BaseCommand, command


@command
class SimulateCommand(BaseCommand):
    help = "draw a series from the model, with truth.json beside it"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", type=Path, required=True)
        parser.add_argument("-n", "--length", type=int, required=True)
        parser.add_argument("--seed", type=int)
        parser.add_argument("--output", type=Path, required=True)

    def run(self, args: argparse.Namespace) -> None:
        truth = self.services.simulate_file(
            args.config, args.length, args.output, self.overrides(args)
        )
        print(f"changepoints = {list(truth.changepoints)}")
