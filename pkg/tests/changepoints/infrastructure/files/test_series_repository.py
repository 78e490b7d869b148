from pathlib import Path

import numpy as np
import pytest

from changepoints.core.pipeline import Series
from changepoints.core.shared import InputError
from changepoints.infrastructure.files import SeriesRepositoryOnCSV


@pytest.fixture
def repository() -> SeriesRepositoryOnCSV:
    return SeriesRepositoryOnCSV()


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "series.csv"
    path.write_text(text)
    return path


def test_reads_header_and_blank_cells(
    repository: SeriesRepositoryOnCSV, tmp_path: Path
) -> None:
    series = repository.read(write(tmp_path, "t,y1,y2\n1,0.5,\n2,,-1e-3\n3,,\n5,2,3\n"))

    assert series.index == ("1", "2", "3", "5")
    np.testing.assert_array_equal(np.isnan(series.values), [
        [False, True],
        [True, False],
        [True, True],
        [False, False],
    ])
    assert series.values[0, 0] == 0.5
    assert series.values[1, 1] == -1e-3
    assert [mask.observed_count for mask in series.masks] == [1, 1, 0, 2]


def test_reads_dates_without_header(
    repository: SeriesRepositoryOnCSV, tmp_path: Path
) -> None:
    series = repository.read(write(tmp_path, "2024-01-01,1\n2024-01-02,2\n2024-02-01,3\n"))

    assert series.index == ("2024-01-01", "2024-01-02", "2024-02-01")
    assert series.d == 1


def test_blank_lines_are_skipped_but_counted(
    repository: SeriesRepositoryOnCSV, tmp_path: Path
) -> None:
    with pytest.raises(InputError, match="line 4"):
        repository.read(write(tmp_path, "1,0\n\n2,1\n3,abc\n"))


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("1,0\n3,1\n2,2\n", "line 3: index 2 is not increasing"),
        ("1,0\n1,1\n", "line 2: index 1 is not increasing"),
        ("1,0\n2024-01-01,1\n", "line 2: index mixes"),
        ("t,y\n1,0\n2,inf\n", "line 3: column 2 is not finite"),
        ("t,y\nx,0\n", "line 2: cannot parse index"),
        ("1x,0.5\n2,0.7\n", "line 1: cannot parse index"),
        ("t,,\nday,1.5,\n", "line 2: cannot parse index"),
    ],
)
def test_malformed_rows_name_their_line(
    repository: SeriesRepositoryOnCSV, tmp_path: Path, text: str, message: str
) -> None:
    with pytest.raises(InputError, match=message):
        repository.read(write(tmp_path, text))


def test_missing_and_empty_files(repository: SeriesRepositoryOnCSV, tmp_path: Path) -> None:
    with pytest.raises(InputError, match="does not exist"):
        repository.read(tmp_path / "nope.csv")
    with pytest.raises(InputError):
        repository.read(write(tmp_path, ""))
    with pytest.raises(InputError, match="no data rows"):
        repository.read(write(tmp_path, "t,y1\n"))


def test_written_series_reads_back(repository: SeriesRepositoryOnCSV, tmp_path: Path) -> None:
    values = np.array([[0.1, np.nan], [np.nan, np.nan], [1 / 3, -2.5e-17]])
    path = tmp_path / "nested" / "out.csv"

    repository.write(path, Series.numbered(values))
    again = repository.read(path)

    assert path.read_text().splitlines()[0] == "t,y1,y2"
    assert again.index == ("1", "2", "3")
    np.testing.assert_array_equal(again.values, values)
