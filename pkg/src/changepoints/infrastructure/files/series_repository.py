from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pandas as pd

from changepoints.core.pipeline import Series, SeriesRepository
from changepoints.core.shared import InputError


def _parse_index(cell: str) -> int | pd.Timestamp | None:
    try:
        return int(cell)
    except ValueError:
        pass
    try:
        return pd.Timestamp.fromisoformat(cell)
    except ValueError:
        return None


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _is_header(cells: list[str]) -> bool:
    """Neither the index nor any value cell reads as data."""
    return _parse_index(cells[0]) is None and not any(
        _is_number(cell) for cell in cells[1:] if cell
    )


class SeriesRepositoryOnCSV(SeriesRepository):
    """``index,y1,..,yd`` rows; an empty cell is an unobserved component.

    The index is an integer or an ISO date and must increase strictly. A
    first row is a header when neither its index nor its values parse.
    """

    def read(self, path: Path) -> Series:
        try:
            frame = pd.read_csv(
                path,
                header=None,
                dtype=str,
                keep_default_na=False,
                skip_blank_lines=False,
            )
        except FileNotFoundError:
            raise InputError(f"Series file {path} does not exist")
        except pd.errors.EmptyDataError:
            raise InputError(f"Series file {path} is empty")
        except pd.errors.ParserError as error:
            raise InputError(f"{path}: {error}")
        frame = frame.fillna("")

        rows = [
            (line, [cell.strip() for cell in row])
            for line, row in enumerate(frame.itertuples(index=False, name=None), start=1)
            if any(cell.strip() for cell in row)
        ]
        if rows and _is_header(rows[0][1]):
            rows = rows[1:]
        if not rows:
            raise InputError(f"Series file {path} has no data rows")
        if frame.shape[1] < 2:
            raise InputError(f"{path}: expected an index column and at least one value column")

        labels: list[str] = []
        values = np.full((len(rows), frame.shape[1] - 1), np.nan)
        previous = None
        for row_number, (line, cells) in enumerate(rows):
            key = _parse_index(cells[0])
            if key is None:
                raise InputError(f"line {line}: cannot parse index {cells[0]!r}")
            if previous is not None:
                if type(key) is not type(previous):
                    raise InputError(f"line {line}: index mixes integers and dates")
                if not key > previous:
                    raise InputError(f"line {line}: index {cells[0]} is not increasing")
            previous = key
            labels.append(cells[0])
            for column, cell in enumerate(cells[1:]):
                if not cell:
                    continue
                try:
                    value = float(cell)
                except ValueError:
                    raise InputError(
                        f"line {line}: column {column + 2} is not a number: {cell!r}"
                    )
                if not math.isfinite(value):
                    raise InputError(f"line {line}: column {column + 2} is not finite")
                values[row_number, column] = value
        return Series(index=tuple(labels), values=values)

    def write(self, path: Path, series: Series) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(
            series.values, columns=[f"y{i}" for i in range(1, series.d + 1)]
        )
        frame.insert(0, "t", list(series.index))
        frame.to_csv(path, index=False, na_rep="", float_format="%.17g")
