from functools import lru_cache

from injector import Injector

from .cli.commands import CommandModule
from .config import provide_config
from .infrastructure.files import FilesModule


@lru_cache
def provide_injector() -> Injector:
    return Injector(
        modules=[
            provide_config,
            FilesModule,
            CommandModule,
        ]
    )
