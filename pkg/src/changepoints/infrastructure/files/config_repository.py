from __future__ import annotations

import math
from pathlib import Path
from typing import Any

from pydantic import ValidationError
from pydantic_core import from_json

from changepoints.core.pipeline import RunConfig, RunConfigRepository
from changepoints.core.shared import ConfigError

_INFINITIES = {"inf": math.inf, "+inf": math.inf, "-inf": -math.inf}


def parse_value(text: str) -> Any:
    """JSON when it parses, the bare string otherwise (``fixed``, ``negbin``)."""
    if text.lower() in _INFINITIES:
        return _INFINITIES[text.lower()]
    try:
        return from_json(text, allow_inf_nan=True)
    except ValueError:
        return text


def _assign(tree: dict[str, Any], key: str, value: Any) -> None:
    *parents, leaf = key.split(".")
    node = tree
    for part in parents:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(key, f"{part} is already set to a value")
        node = child
    if isinstance(node.get(leaf), dict):
        raise ConfigError(key, "is a section, not a value")
    node[leaf] = value


class RunConfigRepositoryOnFlatFile(RunConfigRepository):
    """Flat ``dotted.key = value`` files with ``#`` comments."""

    def read_entries(self, path: Path) -> dict[str, Any]:
        try:
            text = path.read_text()
        except OSError as error:
            raise ConfigError(str(path), f"cannot read configuration: {error.strerror}")
        entries: dict[str, Any] = {}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, separator, value = line.partition("=")
            key = key.strip()
            if not separator or not key:
                raise ConfigError(f"line {number}", "expected 'key = value'")
            if key in entries:
                raise ConfigError(key, f"set twice (line {number})")
            entries[key] = parse_value(value.strip())
        return entries

    def load(self, path: Path, overrides: dict[str, Any] | None = None) -> RunConfig:
        entries = self.read_entries(path) | (overrides or {})
        tree: dict[str, Any] = {}
        for key, value in entries.items():
            _assign(tree, key, value)
        try:
            return RunConfig.model_validate(tree)
        except ValidationError as error:
            first = error.errors()[0]
            key = ".".join(str(part) for part in first["loc"]) or "config"
            raise ConfigError(key, first["msg"])
