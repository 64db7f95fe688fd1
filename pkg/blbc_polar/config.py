"""YAML configuration files for annealing and simulation runs."""

from __future__ import annotations

from pathlib import Path
from typing import Any, TypeVar

import yaml
from pydantic import BaseModel, ValidationError

from blbc_polar.errors import ConfigMismatch
from blbc_polar.models import AnnealConfig, SimConfig

_M = TypeVar("_M", bound=BaseModel)


def _load_yaml(path: Path) -> dict[str, Any]:
    """Load a YAML mapping. Returns empty dict if the file is missing."""
    if not path.exists():
        return {}
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ConfigMismatch(f"{path}: top level must be a mapping")
    return data


def _validate(model: type[_M], data: dict[str, Any], path: Path) -> _M:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise ConfigMismatch(f"{path}: {e}") from None


def with_overrides(cfg: _M, **overrides: Any) -> _M:
    """Copy of cfg with the non-None overrides applied and re-validated."""
    data = {**cfg.model_dump(), **{k: v for k, v in overrides.items() if v is not None}}
    try:
        return type(cfg).model_validate(data)
    except ValidationError as e:
        raise ConfigMismatch(str(e)) from None


def _save(path: Path, model: BaseModel) -> None:
    path.write_text(
        yaml.dump(model.model_dump(mode="json"), default_flow_style=False, sort_keys=False),
        encoding="utf-8",
    )


def load_anneal_config(path: Path) -> AnnealConfig:
    """Missing file -> defaults."""
    return _validate(AnnealConfig, _load_yaml(path), path)


def save_anneal_config(path: Path, cfg: AnnealConfig) -> None:
    _save(path, cfg)


def load_sim_config(path: Path) -> SimConfig:
    """SimConfig has required fields, so a missing file is an error."""
    if not path.exists():
        raise ConfigMismatch(f"config file {path} not found")
    return _validate(SimConfig, _load_yaml(path), path)


def save_sim_config(path: Path, cfg: SimConfig) -> None:
    _save(path, cfg)
