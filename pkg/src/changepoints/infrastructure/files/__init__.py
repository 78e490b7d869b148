from injector import Module, provider, singleton

from changepoints.core.pipeline import (
    ReportRepository,
    RunConfigRepository,
    SeriesRepository,
)

from .config_repository import RunConfigRepositoryOnFlatFile
from .report_repository import ReportRepositoryOnFiles
from .series_repository import SeriesRepositoryOnCSV


class FilesModule(Module):
    @singleton
    @provider
    def provide_config_repository(self) -> RunConfigRepository:
        return RunConfigRepositoryOnFlatFile()

    @singleton
    @provider
    def provide_series_repository(self) -> SeriesRepository:
        return SeriesRepositoryOnCSV()

    @singleton
    @provider
    def provide_report_repository(self) -> ReportRepository:
        return ReportRepositoryOnFiles()


__all__ = [
    "FilesModule",
    "ReportRepositoryOnFiles",
    "RunConfigRepositoryOnFlatFile",
    "SeriesRepositoryOnCSV",
]
