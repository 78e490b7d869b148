import math
from pathlib import Path

import pytest

from changepoints.core.shared import ConfigError
from changepoints.infrastructure.files import RunConfigRepositoryOnFlatFile
from changepoints.infrastructure.files.config_repository import parse_value

CONFIG = """\
# two-channel run
prior.kind = negbin
prior.p = 0.2
prior.r = 3
model.d = 2
model.delta2 = [4.0, 9.0]   # per-component prior scales
model.noise = invgamma
model.nu = 3
model.gamma = 1.5
filter.max_particles = inf
risk.v = [1, -1]
risk.theta = 0.5
seed = 17
"""


@pytest.fixture
def repository() -> RunConfigRepositoryOnFlatFile:
    return RunConfigRepositoryOnFlatFile()


def write(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.cfg"
    path.write_text(text)
    return path


@pytest.mark.parametrize(
    ("text", "value"),
    [
        ("3", 3),
        ("0.25", 0.25),
        ("[1, 2.5]", [1, 2.5]),
        ("true", True),
        ("negbin", "negbin"),
        ("inf", math.inf),
        ("-inf", -math.inf),
    ],
)
def test_parse_value(text: str, value: object) -> None:
    assert parse_value(text) == value


def test_load_builds_nested_config(
    repository: RunConfigRepositoryOnFlatFile, tmp_path: Path
) -> None:
    run = repository.load(write(tmp_path, CONFIG))

    assert run.prior.kind == "negbin" and run.prior.r == 3
    assert run.model.d == 2
    assert run.model.delta2 == [4.0, 9.0]
    assert run.model.noise == "invgamma"
    assert run.filter.max_particles is None
    assert run.risk is not None and run.risk.v == (1.0, -1.0)
    assert run.seed == 17


def test_overrides_win(repository: RunConfigRepositoryOnFlatFile, tmp_path: Path) -> None:
    run = repository.load(
        write(tmp_path, CONFIG), {"seed": 4, "filter.max_particles": 32}
    )

    assert run.seed == 4
    assert run.filter.max_particles == 32


@pytest.mark.parametrize(
    ("text", "key"),
    [
        ("model.d = 1\nprior.foo = 1\n", "prior.foo"),
        ("model.d = 1\nprior.p = 2\n", "prior.p"),
        ("model.d = 1\nfilter.max_particles = 1\n", "filter.max_particles"),
        ("prior.p = 0.5\n", "model"),
        ("model.d = 1\nseed = -1\n", "seed"),
        ("model.d = 1\nmodel.d = 2\n", "model.d"),
        ("model.d = 1\njust words\n", "line 2"),
        ("model = 1\nmodel.d = 1\n", "model.d"),
        ("model.d = 1\nmodel.nu = 2\n", "model"),
        ("model.d = 1\nmodel.noise = invgamma\nmodel.nu = 2\nmodel.gamma = 1\nmodel.sigma2 = 1\n", "model"),
    ],
)
def test_invalid_configs_name_the_key(
    repository: RunConfigRepositoryOnFlatFile, tmp_path: Path, text: str, key: str
) -> None:
    with pytest.raises(ConfigError) as error:
        repository.load(write(tmp_path, text))
    assert error.value.key == key
    assert error.value.exit_code == 3


def test_missing_file(repository: RunConfigRepositoryOnFlatFile, tmp_path: Path) -> None:
    with pytest.raises(ConfigError):
        repository.load(tmp_path / "absent.cfg")
