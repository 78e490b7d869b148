from pathlib import Path
from typing import Any, Protocol

from ..simulation import GroundTruth
from .domain import DetectionReport, Series
from .schemas import RunConfig


class RunConfigRepository(Protocol):
    def load(self, path: Path, overrides: dict[str, Any] | None = None) -> RunConfig: ...


class SeriesRepository(Protocol):
    def read(self, path: Path) -> Series: ...
    def write(self, path: Path, series: Series) -> None: ...


class ReportRepository(Protocol):
    def write_detection(
        self, output_dir: Path, report: DetectionReport, trace_filename: str
    ) -> None: ...
    def write_truth(self, path: Path, truth: GroundTruth) -> None: ...
