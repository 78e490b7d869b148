import argparse
from pathlib import Path

from changepoints.core.pipeline import ExactReport

from .base import BaseCommand, command


def format_exact(report: ExactReport) -> list[str]:
    lines = [f"log_evidence = {report.log_evidence!r}"]
    lines += ["", "segmentation,prior,posterior"]
    lines += [
        f"{' '.join(map(str, mass.changepoints))},{mass.prior!r},{mass.posterior!r}"
        for mass in report.segmentations
    ]
    lines += ["", "t,changepoint_probability"]
    lines += [f"{t},{p!r}" for t, p in sorted(report.marginals.items())]
    lines += ["", "changepoint,last_changepoint_probability"]
    lines += [f"{j},{p!r}" for j, p in sorted(report.last_changepoint.items())]
    lines += [
        "",
        f"joint_map = {list(report.joint_map)}",
        f"greedy_map = {list(report.greedy_map)}",
    ]
    if report.risk is not None:
        lines.append(f"risk = {report.risk!r}")
    if report.deviations is not None:
        lines.append("")
        lines += [f"max_deviation.{key} = {value:.3e}" for key, value in report.deviations.items()]
    return lines


@command
class ExactCommand(BaseCommand):
    help = "enumerate every segmentation of a short series (n <= 16)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--config", type=Path, required=True)
        parser.add_argument("--input", type=Path, required=True)
        parser.add_argument("--seed", type=int)
        parser.add_argument(
            "--compare", action="store_true", help="also run the exact filter and report deviations"
        )

    def run(self, args: argparse.Namespace) -> None:
        report = self.services.exact_file(
            args.config, args.input, args.compare, self.overrides(args)
        )
        print("\n".join(format_exact(report)))
