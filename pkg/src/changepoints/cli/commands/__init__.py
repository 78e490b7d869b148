import argparse
import logging
from collections.abc import Sequence

from injector import Injector, Module, provider

from changepoints.config import ChangepointSettings
from changepoints.core.pipeline import (
    DetectionConfigurations,
    DetectionServices,
    ReportRepository,
    RunConfigRepository,
    SeriesRepository,
)
from changepoints.core.shared import ChangepointError

from .base import BaseCommand, Commands
from .detect_command import DetectCommand, RiskCommand
from .exact_command import ExactCommand
from .simulate_command import SimulateCommand

logger = logging.getLogger(__name__)


class CommandModule(Module):
    @provider
    def provide_detection_services(
        self,
        config_repository: RunConfigRepository,
        series_repository: SeriesRepository,
        report_repository: ReportRepository,
        config: ChangepointSettings,
    ) -> DetectionServices:
        return DetectionServices(
            config_repository=config_repository,
            series_repository=series_repository,
            report_repository=report_repository,
            config=DetectionConfigurations.model_validate(config),
        )

    @provider
    def provide_detect_command(self, services: DetectionServices) -> DetectCommand:
        return DetectCommand(services)

    @provider
    def provide_risk_command(self, services: DetectionServices) -> RiskCommand:
        return RiskCommand(services)

    @provider
    def provide_exact_command(self, services: DetectionServices) -> ExactCommand:
        return ExactCommand(services)

    @provider
    def provide_simulate_command(self, services: DetectionServices) -> SimulateCommand:
        return SimulateCommand(services)


def build_parser(injector: Injector) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="changepoints", description="Online Bayesian changepoint detection"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command_class in Commands.commands:
        instance: BaseCommand = injector.get(command_class)
        subparser = subparsers.add_parser(instance.name, help=instance.help)
        instance.add_arguments(subparser)
        subparser.set_defaults(handler=instance)
    return parser


def run_cli(argv: Sequence[str], injector: Injector) -> int:
    """Dispatch to a subcommand; returns the process exit code."""
    args = build_parser(injector).parse_args(argv)
    try:
        args.handler.run(args)
    except ChangepointError as error:
        logger.error("%s: %s", type(error).__name__, error)
        return error.exit_code
    return 0


__all__ = [
    "BaseCommand",
    "CommandModule",
    "Commands",
    "DetectCommand",
    "ExactCommand",
    "RiskCommand",
    "SimulateCommand",
    "build_parser",
    "run_cli",
]
