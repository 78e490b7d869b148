import abc
import argparse
import re
from typing import Any, TypeVar

from changepoints.core.pipeline import DetectionServices
from changepoints.infrastructure.files.config_repository import parse_value


def camel_to_kebab(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


class BaseCommand(abc.ABC):
    help: str = ""

    def __init__(self, services: DetectionServices) -> None:
        self.services = services

    @property
    def name(self) -> str:
        return camel_to_kebab(self.__class__.__name__.removesuffix("Command"))

    @abc.abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser) -> None: ...

    @abc.abstractmethod
    def run(self, args: argparse.Namespace) -> None: ...

    @staticmethod
    def overrides(args: argparse.Namespace) -> dict[str, Any]:
        """Flags that replace configuration file values."""
        overrides: dict[str, Any] = {}
        if getattr(args, "seed", None) is not None:
            overrides["seed"] = args.seed
        if getattr(args, "max_particles", None) is not None:
            overrides["filter.max_particles"] = parse_value(args.max_particles)
        return overrides


T = TypeVar("T", bound=BaseCommand)


class Commands:
    commands = list[type[BaseCommand]]()

    @classmethod
    def register(cls, command: type[BaseCommand]) -> None:
        cls.commands.append(command)


def command(cls: type[T]) -> type[T]:
    """Register a subcommand to a centralized registry"""
    Commands.register(cls)
    return cls
