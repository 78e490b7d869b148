import logging
import sys

from changepoints.cli.commands import run_cli
from changepoints.config import ChangepointSettings
from changepoints.module import provide_injector


def main() -> int:
    injector = provide_injector()
    logging.basicConfig(
        format="%(levelname)s [%(asctime)s] %(name)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        level=injector.get(ChangepointSettings).LOG_LEVEL,
    )
    return run_cli(sys.argv[1:], injector)


if __name__ == "__main__":
    sys.exit(main())
